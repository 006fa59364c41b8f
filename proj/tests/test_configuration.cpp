#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "ot12/configuration.hpp"
#include "ot12/rng.hpp"

using namespace ot12;

namespace {

GeometryPtr window_ptr(int w, int h, WindowBoundary b = {}) {
  return std::make_shared<const Geometry>(Geometry::window(w, h, std::move(b)));
}

Configuration random_bits(const GeometryPtr& g, std::uint64_t seed) {
  Rng rng(seed);
  Configuration c(g);
  for (std::size_t e = 0; e < c.edge_count(); ++e) c.set(e, rng.next() & 1U);
  return c;
}

}  // namespace

TEST_CASE("weight table") {
  const Weights w = Weights::make(2, 3, 5);
  const double expected[8] = {0, 2, 3, 5, 5, 3, 2, 0};
  for (std::uint8_t c = 0; c < 8; ++c) CHECK(weight_of(LocalCode{c}, w) == expected[c]);
  CHECK_THROWS_AS(Weights::make(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Weights::make(1, -1, 1), std::invalid_argument);
  CHECK(code_digits(kCode001) == "001");
  CHECK(code_digits(LocalCode{6}) == "110");
}

TEST_CASE("all-horizontal is valid with every vertex at {001}") {
  const GeometryPtr g = make_torus(5);
  const Configuration c = all_horizontal(g);
  CHECK(is_valid(c));
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    CHECK(c.local_code(v) == kCode001);
    CHECK(c.degree(v) == 1);
  }
  CHECK(log_weight(c, Weights::make(2, 1, 1)) == doctest::Approx(g->vertex_count() * std::log(2.0)));
}

TEST_CASE("codes and degrees agree with edge presence") {
  const GeometryPtr g = make_torus(4);
  const Configuration c = random_bits(g, 7);
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    int deg = 0;
    int code = 0;
    for (EdgeKind k : kAllKinds) {
      const bool on = c.present(static_cast<std::size_t>(g->incident_edge(v, k)));
      deg += on;
      code |= on << static_cast<int>(k);
    }
    CHECK(c.degree(v) == deg);
    CHECK(c.local_code(v).value == code);
  }
}

TEST_CASE("violations and the empty configuration") {
  const GeometryPtr g = make_torus(3);
  Configuration c(g);
  CHECK(violations(c).size() == g->vertex_count());
  CHECK(std::isinf(log_weight(c, Weights{})));
  Configuration h = all_horizontal(g);
  const Configuration flipped = flip_edge(h, 0);
  CHECK_FALSE(is_valid(flipped));
  const auto bad = violations(flipped);
  CHECK(bad.size() == 2);
  CHECK(flip_edge(flipped, 0) == h);
}

TEST_CASE("window stubs resolve through the boundary condition") {
  const GeometryPtr free_g = window_ptr(2, 2);
  Configuration c(free_g);
  CHECK_FALSE(c.present_at(0, EdgeKind::B));
  std::vector<bool> stubs(free_g->stub_count(), true);
  const GeometryPtr fixed_g = window_ptr(2, 2, WindowBoundary::fixed_boundary(stubs));
  Configuration d(fixed_g);
  CHECK(d.present_at(0, EdgeKind::B));
  CHECK(d.present_at(0, EdgeKind::C));
  CHECK(d.local_code(0).value == 6);
}

TEST_CASE("serialization round-trips") {
  for (const GeometryPtr& g : {make_torus(2), make_torus(7), window_ptr(3, 2),
                               window_ptr(3, 4, WindowBoundary::fixed_boundary(std::vector<bool>(14, true)))}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Configuration c = random_bits(g, seed);
      const std::string text = write_configuration(c);
      CHECK(read_configuration(text) == c);
      CHECK(write_configuration(read_configuration(text)) == text);
    }
  }
}

TEST_CASE("serialization format") {
  const Configuration c = all_horizontal(make_torus(2));
  CHECK(write_configuration(c) == "ot12 v1 torus L=2\n4902\n");
  CHECK(encode_bits_hex({true, false, false, false, false, false, false, false, true}) == "0101");
  CHECK(decode_bits_hex("0101", 9) == std::vector<bool>{true, false, false, false, false, false, false, false, true});
}

TEST_CASE("malformed input reports a byte offset") {
  CHECK_THROWS_AS(read_configuration(""), ParseError);
  CHECK_THROWS_AS(read_configuration("ot12 v2 torus L=2\n4902\n"), ParseError);
  CHECK_THROWS_AS(read_configuration("ot12 v1 torus L=2\n49\n"), ParseError);
  CHECK_THROWS_AS(read_configuration("ot12 v1 torus L=2\n4g02\n"), ParseError);
  CHECK_THROWS_AS(read_configuration("ot12 v1 torus L=2\n4912\n"), ParseError);
  CHECK_THROWS_AS(read_configuration("ot12 v1 torus L=1\n00\n"), ParseError);
  try {
    read_configuration("ot12 v1 torus L=2\n4z02\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 19);
  }
}

TEST_CASE("save and load") {
  const auto path = std::filesystem::temp_directory_path() / "ot12_test_config.ot12";
  const Configuration c = random_bits(make_torus(6), 3);
  save_configuration(c, path.string());
  CHECK(load_configuration(path.string()) == c);
  std::filesystem::remove(path);
  CHECK_THROWS(load_configuration(path.string()));
}
