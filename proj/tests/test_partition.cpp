#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "ot12/partition.hpp"
#include "ot12/surgery.hpp"

using namespace ot12;

namespace {

Partition3 P(std::vector<std::size_t> a, std::vector<std::size_t> b, std::vector<std::size_t> c) {
  return Partition3({std::move(a), std::move(b), std::move(c)});
}

bool pairwise_compatible(const std::vector<Partition3>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (!is_compatible(f[i], f[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("partition invariants") {
  CHECK_THROWS_AS(P({1}, {}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(P({1, 2}, {2}, {3}), std::invalid_argument);
  const Partition3 p = P({5, 4}, {1}, {3, 2});
  CHECK(p.block(0) == std::vector<std::size_t>{1});
  CHECK(p.block(1) == std::vector<std::size_t>{2, 3});
  CHECK(p.block(2) == std::vector<std::size_t>{4, 5});
  CHECK(p.ground_set() == std::vector<std::size_t>{1, 2, 3, 4, 5});
  CHECK(p == P({3, 2}, {4, 5}, {1}));
}

TEST_CASE("compatibility examples") {
  const Partition3 p = P({1, 2, 3}, {4}, {5});
  const Partition3 q = P({1}, {2}, {3, 4, 5});
  CHECK(is_compatible(p, q));
  CHECK(is_compatible(q, p));
  CHECK_THROWS_AS(is_compatible(p, P({1}, {2}, {3, 4})), std::invalid_argument);
  for (std::size_t k = 3; k <= 6; ++k) {
    for (const Partition3& x : all_partitions(k)) CHECK_FALSE(is_compatible(x, x));
  }
}

TEST_CASE("compatibility agrees with the ordering search for k <= 5") {
  for (std::size_t k = 3; k <= 5; ++k) {
    const auto all = all_partitions(k);
    for (const Partition3& a : all) {
      for (const Partition3& b : all) {
        CHECK(is_compatible(a, b) == oracle::compatible_by_orderings(a, b));
        CHECK(is_compatible(a, b) == is_compatible(b, a));
      }
    }
  }
}

TEST_CASE("all partitions") {
  const std::size_t stirling[] = {0, 0, 0, 1, 6, 25, 90, 301};
  for (std::size_t k = 3; k <= 7; ++k) {
    auto got = all_partitions(k);
    CHECK(got.size() == stirling[k]);
    auto expected = oracle::partitions_by_labelling(k);
    auto key = [](const Partition3& x) { return x.blocks(); };
    auto less = [&](const Partition3& a, const Partition3& b) { return key(a) < key(b); };
    std::sort(got.begin(), got.end(), less);
    std::sort(expected.begin(), expected.end(), less);
    CHECK(got == expected);
  }
}

TEST_CASE("maximum compatible family") {
  CHECK(max_compatible_family(3).size == 1);
  for (std::size_t k = 3; k <= 7; ++k) {
    const CompatibleFamily f = max_compatible_family(k);
    CHECK(f.size <= k - 2);
    CHECK(f.size == k - 2);
    CHECK(f.witness.size() == f.size);
    CHECK(pairwise_compatible(f.witness));
    if (k <= 5) CHECK(f.size == oracle::max_family_exhaustive(k));
  }
  CHECK_THROWS_AS(max_compatible_family(2), std::invalid_argument);
  CHECK_THROWS_AS(max_compatible_family(8), std::invalid_argument);
}

TEST_CASE("nested family") {
  for (std::size_t k = 3; k <= 9; ++k) {
    const auto f = nested_family(k);
    CHECK(f.size() == k - 2);
    CHECK(pairwise_compatible(f));
  }
  const auto f5 = nested_family(5);
  CHECK(f5[0] == P({0}, {1}, {2, 3, 4}));
}

TEST_CASE("tiling") {
  const TilingSpec spec{3, 2, 20, 20};
  const BoxSpec w = spec.window();
  CHECK(w.n == 12);
  const auto tiles = spec.tiles();
  const auto inner = spec.inner_boxes();
  REQUIRE(tiles.size() == 9);
  REQUIRE(inner.size() == 9);
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(tiles[i].n == 4);
    CHECK(inner[i].n == 2);
    CHECK(tiles[i].cx == inner[i].cx);
    CHECK(tiles[i].cy == inner[i].cy);
    for (const VertexId& v : box_vertices(tiles[i])) {
      CHECK(box_contains(w, v));
      CHECK(seen.insert(v).second);
    }
  }
  CHECK(seen.size() == box_vertices(w).size());
}

TEST_CASE("all-horizontal has no encounter boxes") {
  const GeometryPtr g = make_torus(24);
  const TilingSpec spec{4, 1, 12, 12};
  const KeaneSample s = keane_sample(all_horizontal(g), spec, kCode001);
  CHECK(s.encounter_boxes == 0);
  CHECK(s.ok);
  CHECK(s.families.empty());
}

TEST_CASE("one encounter box gives a family of size one") {
  const GeometryPtr g = make_torus(16);
  const Configuration c = fixtures::three_arm(g, 8, 8);
  const TilingSpec spec{3, 1, 8, 8};
  const KeaneSample s = keane_sample(c, spec, kCode001);
  CHECK(s.encounter_boxes == 1);
  REQUIRE(s.families.size() == 1);
  CHECK(s.families[0].family_size == 1);
  CHECK(s.families[0].y_size >= 3);
  CHECK(s.families[0].pairwise_compatible);
  CHECK(s.families[0].within_bound);
  CHECK(s.ok);

  const Region window = Region::box_with_rim(*g, spec.window());
  const ClusterLabels labels = label_clusters(c, kCode001, window);
  const std::size_t cl = static_cast<std::size_t>(labels.label[g->vertex_index({Sublattice::White, 8, 8})]);
  const PartitionFamilies fam = partitions_from_encounter_boxes(c, labels, cl, spec.inner_boxes(), window);
  REQUIRE(fam.partitions.size() == 1);
  const Partition3& p = fam.partitions[0].partition;
  std::size_t y = 0;
  for (std::size_t v : labels.clusters[cl].members) y += window.rim(v);
  CHECK(p.ground_set().size() == y);
  for (const auto& block : p.blocks()) {
    for (std::size_t v : block) CHECK(window.rim(v));
  }
}

TEST_CASE("keane report") {
  KeaneCensus k({10, 1, 40, 40}, kCode001, Weights{});
  CHECK(k.report().lower_bound == doctest::Approx(0.5 * std::pow(1.0 / 6.0, 28) * 100).epsilon(1e-12));
  CHECK(k.report().perimeter_formula == 200);
  CHECK_THROWS_AS(KeaneCensus({0, 1, 0, 0}, kCode001, Weights{}), std::invalid_argument);

  const GeometryPtr g = make_torus(24);
  KeaneCensus census({4, 1, 12, 12}, kCode001, Weights{});
  census.add(all_horizontal(g));
  census.add(all_horizontal(g));
  CHECK(census.report().samples == 2);
  CHECK(census.report().violations == 0);
  CHECK(census.report().mean_encounter_boxes() == 0.0);
  CHECK(census.report().series.size() == 2);
}
