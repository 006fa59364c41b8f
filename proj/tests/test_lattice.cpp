#include <algorithm>
#include <set>

#include "doctest.h"
#include "ot12/lattice.hpp"

using namespace ot12;

namespace {

VertexId W(int x, int y) { return {Sublattice::White, x, y}; }
VertexId B(int x, int y) { return {Sublattice::Black, x, y}; }

}  // namespace

TEST_CASE("neighbours follow the coordinate rule with wraparound") {
  const Geometry g = Geometry::torus(4);
  const auto w = g.neighbors(W(0, 0));
  CHECK(w[0].vertex == B(0, 0));
  CHECK(w[0].kind == EdgeKind::A);
  CHECK(w[1].vertex == B(0, 3));
  CHECK(w[1].kind == EdgeKind::B);
  CHECK(w[2].vertex == B(3, 0));
  CHECK(w[2].kind == EdgeKind::C);

  const auto b = g.neighbors(B(0, 0));
  CHECK(b[0].vertex == W(0, 0));
  CHECK(b[1].vertex == W(0, 1));
  CHECK(b[2].vertex == W(1, 0));
  for (const auto& inc : b) CHECK_FALSE(inc.exterior);
}

TEST_CASE("free window corner has exterior b and c stubs") {
  const Geometry g = Geometry::window(4, 4);
  const auto w = g.neighbors(W(0, 0));
  CHECK_FALSE(w[0].exterior);
  CHECK(w[1].exterior);
  CHECK(w[2].exterior);
  CHECK(g.incident_edge(g.vertex_index(W(0, 0)), EdgeKind::B) == kExterior);
  CHECK(g.stub(g.vertex_index(W(0, 0)), EdgeKind::B) != kExterior);
}

TEST_CASE("invalid geometries and vertices are rejected") {
  CHECK_THROWS_AS(Geometry::torus(1), std::invalid_argument);
  CHECK_THROWS_AS(Geometry::window(0, 3), std::invalid_argument);
  const Geometry g = Geometry::torus(3);
  CHECK_THROWS_AS(g.neighbors(W(3, 0)), std::invalid_argument);
  CHECK_THROWS_AS(g.vertex_index(B(-1, 0)), std::out_of_range);
  CHECK_THROWS_AS(Geometry::window(2, 2, WindowBoundary::fixed_boundary({true})), std::invalid_argument);
}

TEST_CASE("torus adjacency is regular, involutive and kind-consistent") {
  for (int L = 2; L <= 8; ++L) {
    const Geometry g = Geometry::torus(L);
    CHECK(g.edge_count() == static_cast<std::size_t>(3 * L * L));
    CHECK(g.vertex_count() == static_cast<std::size_t>(2 * L * L));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const VertexId id = g.vertex_at(v);
      CHECK(g.vertex_index(id) == v);
      const auto nb = g.neighbors(id);
      for (EdgeKind k : kAllKinds) {
        const Incidence& inc = nb[static_cast<std::size_t>(k)];
        CHECK(inc.kind == k);
        CHECK(inc.vertex.sublattice != id.sublattice);
        const auto back = g.neighbors(inc.vertex)[static_cast<std::size_t>(k)];
        CHECK(back.vertex == id);
        CHECK(back.edge == inc.edge);
        const auto e = g.edge_index(inc.edge);
        REQUIRE(e.has_value());
        CHECK(g.edge_kind(*e) == k);
        CHECK(g.incident_edge(v, k) == static_cast<std::int32_t>(*e));
      }
    }
    std::set<std::size_t> seen;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      CHECK(*g.edge_index(g.edge_at(e)) == e);
      const auto ends = g.endpoints(e);
      CHECK(g.vertex_at(ends[0]).sublattice == Sublattice::White);
      CHECK(g.vertex_at(ends[1]).sublattice == Sublattice::Black);
      seen.insert(e);
    }
    CHECK(seen.size() == g.edge_count());
  }
}

TEST_CASE("window edge count is 3wh - w - h") {
  for (int w = 1; w <= 5; ++w) {
    for (int h = 1; h <= 5; ++h) {
      const Geometry g = Geometry::window(w, h);
      CHECK(g.edge_count() == static_cast<std::size_t>(3 * w * h - w - h));
      CHECK(g.stub_count() == static_cast<std::size_t>(2 * (w + h)));
    }
  }
}

TEST_CASE("face walks close after six steps") {
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      const auto f = face_vertices(x, y);
      CHECK(step(f[5], EdgeKind::B) == f[0]);
      CHECK(std::set<VertexId>(f.begin(), f.end()).size() == 6);
    }
  }
}

TEST_CASE("box vertex classification") {
  const Geometry g = Geometry::torus(16);
  for (int n = 1; n <= 10; ++n) {
    const BoxSpec b{n, 8, 8};
    const auto cls = classify_box_vertices(b, g);
    CHECK(cls.size() == static_cast<std::size_t>(2 * n * n));
    const auto count = [&](BoxVertexType t) {
      return std::count_if(cls.begin(), cls.end(), [&](const ClassifiedVertex& c) { return c.type == t; });
    };
    CHECK(count(BoxVertexType::TypeIII) == 2);
    if (n >= 2) {
      CHECK(count(BoxVertexType::TypeII) == 4 * n - 4);
      CHECK(count(BoxVertexType::TypeI) == 2 * (n - 1) * (n - 1));
    }
    const auto corners = box_corners(b);
    for (const auto& c : cls) {
      if (c.type == BoxVertexType::TypeIII) CHECK((c.vertex == g.wrap(corners[0]) || c.vertex == g.wrap(corners[1])));
    }
  }
}

TEST_CASE("n = 1 box: both vertices are boundary vertices") {
  const Geometry g = Geometry::torus(8);
  const auto cls = classify_box_vertices({1, 4, 4}, g);
  REQUIRE(cls.size() == 2);
  CHECK(cls[0].type == BoxVertexType::TypeIII);
  CHECK(cls[1].type == BoxVertexType::TypeIII);
  CHECK(box_boundary_vertices({1, 4, 4}, g).size() == 2);
}

TEST_CASE("n = 5 classification matches brute-force neighbour counting") {
  const Geometry g = Geometry::torus(12);
  const BoxSpec b{5, 6, 6};
  std::set<VertexId> members;
  for (int x = b.x0(); x < b.x0() + 5; ++x) {
    for (int y = b.y0(); y < b.y0() + 5; ++y) {
      members.insert(W(x, y));
      members.insert(B(x, y));
    }
  }
  int counts[4] = {0, 0, 0, 0};
  for (const VertexId& v : members) {
    int inside = 0;
    for (const auto& inc : g.neighbors(v)) inside += members.count(inc.vertex);
    ++counts[inside];
  }
  const auto cls = classify_box_vertices(b, g);
  const auto count = [&](BoxVertexType t) {
    return static_cast<int>(std::count_if(cls.begin(), cls.end(), [&](const ClassifiedVertex& c) { return c.type == t; }));
  };
  CHECK(count(BoxVertexType::TypeI) == counts[3]);
  CHECK(count(BoxVertexType::TypeII) == counts[2]);
  CHECK(count(BoxVertexType::TypeIII) == counts[1]);
  CHECK(counts[1] == 2);
}

TEST_CASE("outer contour") {
  const Geometry g = Geometry::torus(12);
  CHECK(outer_contour({2, 6, 6}, g) == box_interior_edges({2, 6, 6}, g));

  const BoxSpec b{4, 6, 6};
  std::set<std::size_t> in_box;
  for (const VertexId& v : box_vertices(b)) in_box.insert(g.vertex_index(v));
  std::vector<std::size_t> brute;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto ends = g.endpoints(e);
    if (!in_box.count(ends[0]) || !in_box.count(ends[1])) continue;
    bool touches = false;
    for (std::size_t end : ends) {
      for (EdgeKind k : kAllKinds) touches = touches || !in_box.count(static_cast<std::size_t>(g.neighbor(end, k)));
    }
    if (touches) brute.push_back(e);
  }
  const auto contour = outer_contour(b, g);
  CHECK(contour == brute);
  const auto interior = box_interior_edges(b, g);
  const auto boundary = box_boundary_edges(b, g);
  for (std::size_t e : contour) {
    CHECK(std::binary_search(interior.begin(), interior.end(), e));
    CHECK_FALSE(std::binary_search(boundary.begin(), boundary.end(), e));
  }
}

TEST_CASE("horizontal edges of box vertices are interior") {
  const Geometry g = Geometry::torus(12);
  for (int n = 1; n <= 6; ++n) {
    for (const VertexId& v : box_vertices({n, 6, 6})) CHECK(box_contains({n, 6, 6}, step(v, EdgeKind::A)));
  }
}

TEST_CASE("corner hexagons and the exclusion set") {
  const Geometry g = Geometry::torus(16);
  for (int n = 3; n <= 7; ++n) {
    const BoxSpec b{n, 8, 8};
    const CornerHexagons h = corner_hexagons(b, g);
    CHECK(h.exclusion.size() == 28);
    std::set<std::size_t> in_box;
    for (const VertexId& v : box_vertices(b)) in_box.insert(g.vertex_index(v));
    const auto corners = box_corners(b);
    for (const auto& [hex, corner] : {std::pair{h.h1, corners[0]}, std::pair{h.h2, corners[1]}}) {
      CHECK(hex[0] == g.vertex_index(corner));
      int inside = 0;
      for (std::size_t v : hex) inside += static_cast<int>(in_box.count(v));
      CHECK(inside == 1);
      for (std::size_t i = 0; i < 6; ++i) {
        bool adjacent = false;
        for (EdgeKind k : kAllKinds) adjacent = adjacent || g.neighbor(hex[i], k) == static_cast<std::int32_t>(hex[(i + 1) % 6]);
        CHECK(adjacent);
      }
      CHECK(std::set<std::size_t>(hex.begin(), hex.end()).size() == 6);
    }
    CHECK(h.p == static_cast<std::size_t>(g.neighbor(h.h1[0], EdgeKind::A)));
    CHECK(h.q == static_cast<std::size_t>(g.neighbor(h.h2[0], EdgeKind::A)));
    CHECK(std::is_sorted(h.exclusion.begin(), h.exclusion.end()));
  }
}

TEST_CASE("boxes must fit with margin") {
  const Geometry g = Geometry::torus(6);
  CHECK_NOTHROW(require_box_fits({2, 3, 3}, g, 2));
  CHECK_THROWS_AS(require_box_fits({3, 3, 3}, g, 2), std::invalid_argument);
  const Geometry w = Geometry::window(8, 8);
  CHECK_THROWS_AS(require_box_fits({3, 1, 1}, w, 1), std::invalid_argument);
  CHECK_NOTHROW(require_box_fits({3, 4, 4}, w, 2));
}
