#include "ot12/surgery.hpp"

#include <algorithm>
#include <cmath>

namespace ot12 {

std::uint64_t surgery_bound(int N) {
  const auto m = static_cast<std::uint64_t>(N + 2);
  return 2 * m * m + 10;
}

double log_probability_factor(int N, const Weights& w) {
  const double lo = std::min({w.a, w.b, w.c});
  const double hi = std::max({w.a, w.b, w.c});
  return std::log(0.5) + static_cast<double>(surgery_bound(N)) * std::log(lo / (6.0 * hi));
}

double probability_factor(int N, const Weights& w) {
  const double lo = std::min({w.a, w.b, w.c});
  const double hi = std::max({w.a, w.b, w.c});
  return 0.5 * std::pow(lo / (6.0 * hi), static_cast<double>(surgery_bound(N)));
}

std::array<std::size_t, 6> hexagon_sides(const Geometry& g, const std::array<std::size_t, 6>& hexagon) {
  std::array<std::size_t, 6> sides{};
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t v = hexagon[i];
    const std::size_t next = hexagon[(i + 1) % 6];
    bool found = false;
    for (EdgeKind k : kAllKinds) {
      if (g.neighbor(v, k) == static_cast<std::int32_t>(next)) {
        sides[i] = static_cast<std::size_t>(g.incident_edge(v, k));
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("hexagon vertices are not consecutive neighbours");
  }
  return sides;
}

void corner_repair(Configuration& cfg, const std::array<std::size_t, 6>& h) {
  const int d1 = cfg.degree(h[0]);
  if (d1 == 0) throw std::invalid_argument("corner repair needs the corner's horizontal edge present");
  if (d1 <= 2) return;
  const auto side = hexagon_sides(cfg.geometry(), h);
  if (cfg.local_code(h[2]) == kCode001) {
    cfg.set(side[0], false);
    return;
  }
  if (cfg.local_code(h[4]) == kCode001) {
    cfg.set(side[5], false);
    return;
  }
  cfg.set(side[0], false);  // v1v2
  if (cfg.degree(h[1]) >= 1) return;
  cfg.set(side[1], true);   // v2v3
  if (cfg.degree(h[2]) <= 2) return;
  cfg.set(side[2], false);  // v3v4
  if (cfg.degree(h[3]) >= 1) return;
  cfg.set(side[3], true);   // v4v5
  if (cfg.degree(h[4]) <= 2) return;
  cfg.set(side[4], false);  // v5v6; v6 keeps v6v1
}

namespace {

SurgeryReport finish_report(const Configuration& in, Configuration out, int N, const Weights& w) {
  SurgeryReport r{in, std::move(out), {}, {}, surgery_bound(N), probability_factor(N, w), log_probability_factor(N, w)};
  const Geometry& g = in.geometry();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (in.local_code(v) != r.output.local_code(v)) r.modified_vertices.push_back(v);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (in.present(e) != r.output.present(e)) r.modified_edges.push_back(e);
  }
  return r;
}

void require_valid_input(const Configuration& cfg) {
  const auto bad = violations(cfg);
  if (!bad.empty()) throw SurgeryFailure("input configuration violates the 1-2 law", bad.front());
}

void require_valid_output(const Configuration& cfg, const char* what) {
  const auto bad = violations(cfg);
  if (!bad.empty()) throw SurgeryFailure(what, bad.front());
}

}  // namespace

SurgeryReport rewire_box_interior(const Configuration& cfg, int N, int cx, int cy, const Weights& w) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const Geometry& g = cfg.geometry();
  const BoxSpec outer{N + 2, cx, cy};
  require_box_fits(outer, g, 2);
  require_valid_input(cfg);

  Configuration out = cfg;
  for (std::size_t e : box_interior_edges(outer, g)) out.set(e, g.edge_kind(e) == EdgeKind::A);
  const CornerHexagons hex = corner_hexagons(outer, g);
  corner_repair(out, hex.h1);
  corner_repair(out, hex.h2);

  require_valid_output(out, "rewired configuration violates the 1-2 law");
  for (const VertexId& v : box_vertices(BoxSpec{N, cx, cy})) {
    const std::size_t i = g.vertex_index(g.wrap(v));
    if (out.local_code(i) != kCode001) throw SurgeryFailure("B_N vertex is not {001} after rewiring", i);
  }
  return finish_report(cfg, std::move(out), N, w);
}

// ---------------------------------------------------------------------------

Trident select_trident(const Configuration& cfg, int N, int cx, int cy, LocalCode code, const Region& region,
                       std::size_t threshold) {
  const Geometry& g = cfg.geometry();
  const BoxSpec outer{N + 2, cx, cy};
  require_box_fits(outer, g, 2);
  const ClusterLabels labels = label_clusters(cfg, code, region);
  const CornerHexagons hex = corner_hexagons(outer, g);
  std::vector<char> excluded(g.vertex_count(), 0);
  for (std::size_t v : hex.exclusion) excluded[v] = 1;

  std::vector<std::size_t> box;
  for (const VertexId& v : box_vertices(outer)) box.push_back(g.vertex_index(g.wrap(v)));
  Trident t;
  const MeetingResult meeting = clusters_meeting(labels, box, true);
  t.clusters_meeting = meeting.count;

  std::vector<char> admissible(labels.clusters.size(), 0);
  for (std::size_t c : meeting.clusters) {
    const auto& members = labels.clusters[c].members;
    admissible[c] = std::none_of(members.begin(), members.end(), [&](std::size_t v) { return excluded[v] != 0; });
    t.admissible_clusters += admissible[c];
  }

  auto candidates = box_boundary_vertices(outer, g);
  std::sort(candidates.begin(), candidates.end());
  std::size_t found = 0;
  std::array<std::int32_t, 3> used{-1, -1, -1};
  for (std::size_t v : candidates) {
    if (found == 3) break;
    const std::int32_t lab = labels.label[v];
    if (lab < 0 || excluded[v] || !admissible[static_cast<std::size_t>(lab)]) continue;
    if (std::find(used.begin(), used.end(), lab) != used.end()) continue;
    used[found] = lab;
    t.u[found++] = v;
  }
  if (found < 3) {
    if (meeting.count >= threshold) {
      throw std::logic_error("trident selection failed although " + std::to_string(meeting.count) +
                             " rim-touching clusters meet B_{N+2}");
    }
    throw InsufficientClusters("insufficient clusters: " + std::to_string(t.admissible_clusters) +
                                   " admissible of " + std::to_string(meeting.count) + " meeting B_{N+2}",
                               t.admissible_clusters);
  }
  return t;
}

EncounterChecklist check_encounter_construction(const Configuration& out, int N, int cx, int cy,
                                                const std::array<std::size_t, 3>& u) {
  const Geometry& g = out.geometry();
  EncounterChecklist c;
  const auto bad = violations(out);
  c.valid = bad.empty();
  c.failing_vertices = bad;
  c.core_all_001 = true;
  for (const VertexId& v : box_vertices(BoxSpec{N, cx, cy})) {
    const std::size_t i = g.vertex_index(g.wrap(v));
    if (out.local_code(i) != kCode001) {
      c.core_all_001 = false;
      c.failing_vertices.push_back(i);
    }
  }
  c.gatekeeping = true;
  for (std::size_t v : box_boundary_vertices(BoxSpec{N + 2, cx, cy}, g)) {
    if (std::find(u.begin(), u.end(), v) != u.end()) continue;
    if (out.local_code(v) == kCode001) {
      c.gatekeeping = false;
      c.failing_vertices.push_back(v);
    }
  }
  return c;
}

SurgeryReport build_encounter_box(const Configuration& cfg, int N, int cx, int cy, const std::array<std::size_t, 3>& u,
                                  const Weights& w) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const Geometry& g = cfg.geometry();
  const BoxSpec outer{N + 2, cx, cy};
  const BoxSpec core{N, cx, cy};
  require_box_fits(outer, g, 2);
  require_valid_input(cfg);
  const CornerHexagons hex = corner_hexagons(outer, g);

  std::vector<char> is_boundary(g.vertex_count(), 0);
  const auto boundary = box_boundary_vertices(outer, g);
  for (std::size_t v : boundary) is_boundary[v] = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!is_boundary[u[i]]) throw std::invalid_argument("trident vertex is not a boundary vertex of B_{N+2}");
    if (std::binary_search(hex.exclusion.begin(), hex.exclusion.end(), u[i])) {
      throw std::invalid_argument("trident vertex lies in the exclusion set");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (u[i] == u[j]) throw std::invalid_argument("trident vertices must be distinct");
    }
  }
  const std::size_t v1 = hex.h1[0];
  const std::size_t w1 = hex.h2[0];

  Configuration out = cfg;

  // (i) horizontal edges of the outer contour.
  for (std::size_t e : outer_contour(outer, g)) {
    if (g.edge_kind(e) == EdgeKind::A) out.set(e, true);
  }

  // (ii) e_i = not e_b at the remaining boundary vertices.
  std::vector<char> in_outer(g.vertex_count(), 0);
  for (const VertexId& v : box_vertices(outer)) in_outer[g.vertex_index(g.wrap(v))] = 1;
  for (std::size_t v : boundary) {
    if (v == v1 || v == w1 || std::find(u.begin(), u.end(), v) != u.end()) continue;
    std::int32_t e_b = kExterior;
    std::int32_t e_i = kExterior;
    for (EdgeKind k : {EdgeKind::B, EdgeKind::C}) {
      const auto nb = static_cast<std::size_t>(g.neighbor(v, k));
      (in_outer[nb] ? e_i : e_b) = g.incident_edge(v, k);
    }
    if (e_b == kExterior || e_i == kExterior || !in_outer[static_cast<std::size_t>(g.neighbor(v, EdgeKind::A))]) {
      throw SurgeryFailure("boundary vertex without the e_h / e_b / e_i split", v);
    }
    out.set(static_cast<std::size_t>(e_i), !out.present(static_cast<std::size_t>(e_b)));
  }

  // (iii) v1p and w1q keep p and q within the 1-2 law; absent on ties.
  for (const auto& [corner, partner] : {std::pair{v1, hex.p}, std::pair{w1, hex.q}}) {
    const auto e = static_cast<std::size_t>(g.incident_edge(corner, EdgeKind::A));
    out.set(e, false);
    out.set(e, out.degree(partner) == 0);
  }

  // (iv) alternating sides on both corner hexagons.
  for (const auto& h : {hex.h1, hex.h2}) {
    const auto side = hexagon_sides(g, h);
    const int phase = side[0] < side[5] ? 0 : 1;
    for (int i = 0; i < 6; ++i) out.set(side[static_cast<std::size_t>(i)], (i % 2) == phase);
  }

  // (v) cut B_N loose and make it all-horizontal.
  for (std::size_t e : box_boundary_edges(core, g)) out.set(e, false);
  for (std::size_t e : box_interior_edges(core, g)) out.set(e, g.edge_kind(e) == EdgeKind::A);

  // Bounded repair: only the TypeIII corners have a cascade to fall back on.
  for (std::size_t v : violations(out)) {
    if (v == v1 && out.degree(v) == 3) {
      corner_repair(out, hex.h1);
    } else if (v == w1 && out.degree(v) == 3) {
      corner_repair(out, hex.h2);
    }
  }
  const EncounterChecklist check = check_encounter_construction(out, N, cx, cy, u);
  if (!check.passed()) {
    throw SurgeryFailure(!check.valid ? "encounter construction violates the 1-2 law"
                         : !check.core_all_001 ? "B_N vertex is not {001} after the encounter construction"
                                               : "boundary vertex other than u1, u2, u3 carries {001}",
                         check.failing_vertices.front());
  }
  return finish_report(cfg, std::move(out), N, w);
}

}  // namespace ot12
