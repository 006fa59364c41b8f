#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "ot12/census.hpp"
#include "ot12/sampler.hpp"

using namespace ot12;

namespace {

std::vector<Configuration> sampled(int L, std::size_t n, std::uint64_t seed, const Weights& w = Weights{}) {
  std::vector<Configuration> out;
  RunParams p;
  p.seed = seed;
  p.burn_in = 20;
  p.n_samples = n;
  p.thinning = 2;
  run(make_torus(L), w, p, [&](std::size_t, const Configuration& c) { out.push_back(c); });
  return out;
}

std::vector<std::vector<std::size_t>> members_of(const std::vector<Cluster>& cs) {
  std::vector<std::vector<std::size_t>> out;
  for (const Cluster& c : cs) out.push_back(c.members);
  return out;
}

Configuration shifted(const Configuration& c, int dx, int dy) {
  const Geometry& g = c.geometry();
  Configuration out(c.geometry_ptr());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    EdgeId id = g.edge_at(e);
    id.x = (id.x + dx) % g.width();
    id.y = (id.y + dy) % g.height();
    out.set(*g.edge_index(id), c.present(e));
  }
  return out;
}

std::vector<std::size_t> sizes(const std::vector<Cluster>& cs) {
  std::vector<std::size_t> s;
  for (const Cluster& c : cs) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("union-find labelling matches breadth-first search") {
  for (int L = 3; L <= 6; ++L) {
    for (const Configuration& c : sampled(L, 5, 100 + L, Weights::make(1.5, 1, 0.7))) {
      for (std::uint8_t code = 1; code <= 6; ++code) {
        for (Adjacency adj : {Adjacency::Lattice, Adjacency::PresentOnly}) {
          CHECK(members_of(census(c, LocalCode{code}, adj)) == oracle::bfs_clusters(c, LocalCode{code}, {}, adj));
        }
      }
    }
  }
}

TEST_CASE("clusters are homogeneous, disjoint and maximal") {
  for (const Configuration& c : sampled(6, 4, 7)) {
    const Geometry& g = c.geometry();
    for (std::uint8_t code = 1; code <= 6; ++code) {
      const ClusterLabels lab = label_clusters(c, LocalCode{code}, Region::whole(g));
      std::size_t covered = 0;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const bool has = c.local_code(v).value == code;
        CHECK((lab.label[v] >= 0) == has);
        covered += has;
        if (!has) continue;
        for (EdgeKind k : kAllKinds) {
          const auto u = static_cast<std::size_t>(g.neighbor(v, k));
          if (c.local_code(u).value == code) CHECK(lab.label[u] == lab.label[v]);
        }
      }
      std::size_t total = 0;
      for (std::size_t i = 0; i < lab.clusters.size(); ++i) {
        total += lab.clusters[i].size();
        for (std::size_t v : lab.clusters[i].members) CHECK(lab.label[v] == static_cast<std::int32_t>(i));
        if (i > 0) CHECK(lab.clusters[i - 1].members.front() < lab.clusters[i].members.front());
      }
      CHECK(total == covered);
    }
  }
}

TEST_CASE("census is translation equivariant on the torus") {
  for (const Configuration& c : sampled(7, 3, 11)) {
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 3}, std::pair{5, 2}}) {
      const Configuration s = shifted(c, dx, dy);
      CHECK(is_valid(s));
      for (std::uint8_t code = 1; code <= 6; ++code) {
        CHECK(sizes(census(c, LocalCode{code})) == sizes(census(s, LocalCode{code})));
      }
    }
  }
}

TEST_CASE("census restricted to a box matches the oracle") {
  const GeometryPtr g = make_torus(10);
  for (const Configuration& c : sampled(10, 3, 23)) {
    const BoxSpec b{6, 5, 5};
    const Region r = Region::box(*g, b);
    std::vector<bool> member(g->vertex_count(), false);
    for (std::size_t v : r.vertices()) member[v] = true;
    for (std::uint8_t code = 1; code <= 6; ++code) {
      const auto cs = census(c, LocalCode{code}, r);
      CHECK(members_of(cs) == oracle::bfs_clusters(c, LocalCode{code}, member));
      for (const Cluster& cl : cs) {
        const bool touches = std::any_of(cl.members.begin(), cl.members.end(), [&](std::size_t v) { return r.rim(v); });
        CHECK(cl.touches_window_boundary == touches);
      }
    }
  }
}

TEST_CASE("regions") {
  const GeometryPtr g = make_torus(10);
  CHECK(Region::whole(*g).size() == g->vertex_count());
  CHECK(Region::whole(*g).rim_vertices().empty());
  const Region b = Region::box(*g, {4, 5, 5});
  CHECK(b.size() == 32);
  CHECK(b.rim_vertices().size() == box_boundary_vertices({4, 5, 5}, *g).size());
  const Region wr = Region::box_with_rim(*g, {4, 5, 5});
  CHECK(wr.size() == 32 + wr.rim_vertices().size());
  for (std::size_t v : wr.rim_vertices()) CHECK_FALSE(box_contains({4, 5, 5}, g->vertex_at(v)));
  const Geometry w = Geometry::window(4, 3);
  const Region ww = Region::whole(w);
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    bool ext = false;
    for (EdgeKind k : kAllKinds) ext = ext || w.neighbor(v, k) == kExterior;
    CHECK(ww.rim(v) == ext);
  }
}

TEST_CASE("invalid configurations are rejected") {
  Configuration c(make_torus(3));
  CHECK_THROWS_AS(census(c, kCode001), std::invalid_argument);
}

TEST_CASE("all-horizontal is one {001} cluster") {
  const GeometryPtr g = make_torus(6);
  const Configuration h = all_horizontal(g);
  const auto cs = census(h, kCode001);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].size() == g->vertex_count());
  // Under present-edge adjacency the a-edges form isolated dimers.
  CHECK(census(h, kCode001, Adjacency::PresentOnly).size() == g->vertex_count() / 2);
  for (std::uint8_t code = 2; code <= 6; ++code) CHECK(census(h, LocalCode{code}).empty());
}

TEST_CASE("clusters meeting a vertex set") {
  const GeometryPtr g = make_torus(12);
  Configuration c = fixtures::ab_background(g);
  fixtures::cut_column(c, 2);
  fixtures::cut_column(c, 6);
  const Region r = Region::box(*g, {10, 6, 6});
  const ClusterLabels lab = label_clusters(c, kCode001, r);
  std::vector<std::size_t> probe;
  for (int x : {2, 6}) probe.push_back(g->vertex_index({Sublattice::White, x, 5}));
  const MeetingResult m = clusters_meeting(lab, probe);
  CHECK(m.count == 2);
  CHECK(clusters_meeting(lab, probe, true).count == 2);
  CHECK(clusters_meeting(lab, std::vector<std::size_t>{probe[0], probe[0]}).count == 1);
  CHECK(clusters_meeting(lab, std::vector<std::size_t>{g->vertex_index({Sublattice::White, 4, 5})}).count == 0);
}

TEST_CASE("encounter boxes on hand-built configurations") {
  const GeometryPtr g = make_torus(16);
  const Region region = Region::box(*g, {11, 8, 8});
  const Configuration arms = fixtures::three_arm(g, 8, 8);
  REQUIRE(is_valid(arms));
  const EncounterResult yes = is_encounter_box(arms, {1, 8, 8}, kCode001, region);
  CHECK(yes.encounter);
  CHECK(yes.components.size() == 3);
  for (bool reach : yes.component_reaches_rim) CHECK(reach);

  Configuration line = fixtures::ab_background(g);
  fixtures::cut_column(line, 8);
  const EncounterResult two = is_encounter_box(line, {1, 8, 8}, kCode001, region);
  CHECK_FALSE(two.encounter);
  CHECK(two.components.size() == 2);
  CHECK_FALSE(two.reason.empty());

  CHECK_FALSE(is_encounter_box(all_horizontal(g), {1, 8, 8}, kCode001, region).encounter);
  CHECK_FALSE(is_encounter_box(fixtures::ab_background(g), {1, 8, 8}, kCode001, region).encounter);
  CHECK_THROWS_AS(is_encounter_box(arms, {9, 8, 8}, kCode001, region), std::invalid_argument);
}

TEST_CASE("size statistics") {
  const GeometryPtr g = make_torus(6);
  const Region whole = Region::whole(*g);
  SizeStatistics flat;
  for (int i = 0; i < 3; ++i) flat.add(census_report(all_horizontal(g), whole));
  CHECK(flat.samples() == 3);
  CHECK(flat.largest_fraction(1) == 1.0);
  CHECK(flat.second_largest_fraction(1) == 0.0);
  CHECK(flat.second_to_largest_ratio(1) == 0.0);
  CHECK(flat.largest_fraction(2) == 0.0);

  const auto cs = sampled(6, 6, 41);
  SizeStatistics all;
  SizeStatistics left;
  SizeStatistics right;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const CensusReport r = census_report(cs[i], whole);
    for (int code = 1; code <= 6; ++code) {
      const auto& clusters = r.clusters[static_cast<std::size_t>(code)];
      CHECK(r.by_code[static_cast<std::size_t>(code)].clusters == clusters.size());
      const auto s = sizes(clusters);
      CHECK(r.by_code[static_cast<std::size_t>(code)].largest == (s.empty() ? 0 : s.back()));
      CHECK(r.by_code[static_cast<std::size_t>(code)].second_largest == (s.size() < 2 ? 0 : s[s.size() - 2]));
    }
    all.add(r);
    (i % 2 ? left : right).add(r);
  }
  SizeStatistics merged = right;
  merged.merge(left);
  CHECK(merged == all);
  SizeStatistics other = left;
  other.merge(right);
  CHECK(other == all);
}
