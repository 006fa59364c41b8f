#include "ot12/census.hpp"

#include <algorithm>
#include <stdexcept>

#include "ot12/union_find.hpp"

namespace ot12 {

Region Region::whole(const Geometry& g) {
  Region r;
  r.flags_.assign(g.vertex_count(), kMember);
  r.members_.resize(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    r.members_[v] = v;
    for (EdgeKind k : kAllKinds) {
      if (g.neighbor(v, k) == kExterior) {
        r.flags_[v] |= kRim;
        r.rim_.push_back(v);
        break;
      }
    }
  }
  return r;
}

Region Region::box(const Geometry& g, const BoxSpec& b) {
  require_box_fits(b, g, 0);
  Region r;
  r.flags_.assign(g.vertex_count(), 0);
  for (const VertexId& v : box_vertices(b)) {
    const std::size_t i = g.vertex_index(g.wrap(v));
    r.flags_[i] |= kMember;
    r.members_.push_back(i);
    for (EdgeKind k : kAllKinds) {
      if (!box_contains(b, step(v, k))) {
        r.flags_[i] |= kRim;
        r.rim_.push_back(i);
        break;
      }
    }
  }
  std::sort(r.members_.begin(), r.members_.end());
  std::sort(r.rim_.begin(), r.rim_.end());
  return r;
}

Region Region::box_with_rim(const Geometry& g, const BoxSpec& b) {
  require_box_fits(b, g, 1);
  Region r;
  r.flags_.assign(g.vertex_count(), 0);
  for (const VertexId& v : box_vertices(b)) {
    r.flags_[g.vertex_index(g.wrap(v))] |= kMember;
  }
  for (const VertexId& v : box_vertices(b)) {
    for (EdgeKind k : kAllKinds) {
      const VertexId u = step(v, k);
      if (box_contains(b, u)) continue;
      r.flags_[g.vertex_index(g.wrap(u))] |= kMember | kRim;
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (r.flags_[v] & kMember) r.members_.push_back(v);
    if (r.flags_[v] & kRim) r.rim_.push_back(v);
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

bool joined(const Configuration& cfg, std::size_t v, EdgeKind k, Adjacency adjacency) {
  return adjacency == Adjacency::Lattice || cfg.present_at(v, k);
}

}  // namespace

ClusterLabels label_clusters(const Configuration& cfg, LocalCode code, const Region& region, Adjacency adjacency) {
  const Geometry& g = cfg.geometry();
  if (!is_valid(cfg)) throw std::invalid_argument("census needs a configuration satisfying the 1-2 law");
  const std::size_t n = g.vertex_count();
  ClusterLabels out;
  out.code = code;
  out.label.assign(n, -1);
  std::vector<char> hit(n, 0);
  for (std::size_t v : region.vertices()) hit[v] = cfg.local_code(v) == code;

  UnionFind uf(n);
  for (std::size_t v : region.vertices()) {
    if (!hit[v]) continue;
    for (EdgeKind k : kAllKinds) {
      const std::int32_t u = g.neighbor(v, k);
      if (u == kExterior || !hit[static_cast<std::size_t>(u)]) continue;
      if (joined(cfg, v, k, adjacency)) uf.unite(v, static_cast<std::size_t>(u));
    }
  }
  // Region vertices are visited in ascending order, so clusters come out
  // ordered by their smallest member.
  std::vector<std::int32_t> root_label(n, -1);
  for (std::size_t v : region.vertices()) {
    if (!hit[v]) continue;
    const std::size_t root = uf.find(v);
    if (root_label[root] < 0) {
      root_label[root] = static_cast<std::int32_t>(out.clusters.size());
      out.clusters.push_back({code, {}, false});
    }
    const std::int32_t lab = root_label[root];
    out.label[v] = lab;
    Cluster& c = out.clusters[static_cast<std::size_t>(lab)];
    c.members.push_back(v);
    if (region.rim(v)) c.touches_window_boundary = true;
  }
  return out;
}

std::vector<Cluster> census(const Configuration& cfg, LocalCode code, const Region& region, Adjacency adjacency) {
  return label_clusters(cfg, code, region, adjacency).clusters;
}

std::vector<Cluster> census(const Configuration& cfg, LocalCode code, Adjacency adjacency) {
  return census(cfg, code, Region::whole(cfg.geometry()), adjacency);
}

MeetingResult clusters_meeting(const ClusterLabels& labels, std::span<const std::size_t> vertices, bool boundary_only) {
  MeetingResult out;
  for (std::size_t v : vertices) {
    const std::int32_t lab = labels.label.at(v);
    if (lab < 0) continue;
    if (boundary_only && !labels.clusters[static_cast<std::size_t>(lab)].touches_window_boundary) continue;
    out.clusters.push_back(static_cast<std::size_t>(lab));
  }
  std::sort(out.clusters.begin(), out.clusters.end());
  out.clusters.erase(std::unique(out.clusters.begin(), out.clusters.end()), out.clusters.end());
  out.count = out.clusters.size();
  return out;
}

EncounterResult is_encounter_box(const Configuration& cfg, const BoxSpec& b, LocalCode code, const Region& region,
                                 Adjacency adjacency) {
  return is_encounter_box(label_clusters(cfg, code, region, adjacency), cfg, b, region, adjacency);
}

EncounterResult is_encounter_box(const ClusterLabels& labels, const Configuration& cfg, const BoxSpec& b,
                                 const Region& region, Adjacency adjacency) {
  const Geometry& g = cfg.geometry();
  const BoxSpec outer = b.enlarged(2);
  require_box_fits(outer, g, 1);
  std::vector<char> in_outer(g.vertex_count(), 0);
  for (const VertexId& v : box_vertices(outer)) {
    const std::size_t i = g.vertex_index(g.wrap(v));
    if (!region.member(i) || region.rim(i)) {
      throw std::invalid_argument("B_{n+2} must lie inside the observation region, off its rim");
    }
    for (EdgeKind k : kAllKinds) {
      if (!region.member(g.vertex_index(g.wrap(step(v, k))))) {
        throw std::invalid_argument("B_{n+2} needs a one-vertex margin inside the observation region");
      }
    }
    in_outer[i] = 1;
  }

  EncounterResult out;
  std::int32_t lab = -1;
  for (const VertexId& v : box_vertices(b)) {
    const std::int32_t l = labels.label[g.vertex_index(g.wrap(v))];
    if (l < 0 || (lab >= 0 && l != lab)) {
      out.reason = "B_n is not contained in a single cluster";
      return out;
    }
    lab = l;
  }
  out.cluster = static_cast<std::size_t>(lab);
  const Cluster& c = labels.clusters[static_cast<std::size_t>(lab)];

  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start : c.members) {
    if (in_outer[start] || seen[start]) continue;
    std::vector<std::size_t> comp;
    bool rim = false;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      rim = rim || region.rim(v);
      for (EdgeKind k : kAllKinds) {
        const std::int32_t u = g.neighbor(v, k);
        if (u == kExterior) continue;
        const auto ui = static_cast<std::size_t>(u);
        if (seen[ui] || in_outer[ui] || labels.label[ui] != lab) continue;
        if (adjacency == Adjacency::PresentOnly && !cfg.present_at(v, k)) continue;
        seen[ui] = 1;
        stack.push_back(ui);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.components.push_back(std::move(comp));
    out.component_reaches_rim.push_back(rim);
  }
  const auto reaching = static_cast<std::size_t>(
      std::count(out.component_reaches_rim.begin(), out.component_reaches_rim.end(), true));
  if (reaching != out.components.size()) {
    out.reason = "C \\ B_{n+2} has a component that does not reach the rim";
  } else if (reaching != 3) {
    out.reason = "C \\ B_{n+2} has " + std::to_string(reaching) + " rim-reaching components, not 3";
  } else {
    out.encounter = true;
  }
  return out;
}

// ---------------------------------------------------------------------------

CensusReport census_report(const Configuration& cfg, const Region& region, Adjacency adjacency) {
  CensusReport r;
  r.region_size = region.size();
  for (std::uint8_t code = 1; code <= 6; ++code) {
    auto clusters = census(cfg, LocalCode{code}, region, adjacency);
    CodeSummary& s = r.by_code[code];
    s.clusters = clusters.size();
    for (const Cluster& c : clusters) {
      if (c.touches_window_boundary) ++s.boundary_clusters;
      if (c.size() > s.largest) {
        s.second_largest = s.largest;
        s.largest = c.size();
      } else if (c.size() > s.second_largest) {
        s.second_largest = c.size();
      }
    }
    r.clusters[code] = std::move(clusters);
  }
  return r;
}

void SizeStatistics::add(const CensusReport& r) {
  ++samples_;
  region_total_ += r.region_size;
  for (int code = 1; code <= 6; ++code) {
    const CodeSummary& s = r.by_code[static_cast<std::size_t>(code)];
    largest_sum_[static_cast<std::size_t>(code)] += s.largest;
    second_sum_[static_cast<std::size_t>(code)] += s.second_largest;
    if (s.boundary_clusters >= 2) ++coexist_[static_cast<std::size_t>(code)];
  }
}

void SizeStatistics::merge(const SizeStatistics& other) {
  samples_ += other.samples_;
  region_total_ += other.region_total_;
  for (std::size_t i = 0; i < 8; ++i) {
    largest_sum_[i] += other.largest_sum_[i];
    second_sum_[i] += other.second_sum_[i];
    coexist_[i] += other.coexist_[i];
  }
}

double SizeStatistics::largest_fraction(int code) const {
  return region_total_ == 0 ? 0.0 : static_cast<double>(largest_sum_.at(static_cast<std::size_t>(code))) / static_cast<double>(region_total_);
}

double SizeStatistics::second_largest_fraction(int code) const {
  return region_total_ == 0 ? 0.0 : static_cast<double>(second_sum_.at(static_cast<std::size_t>(code))) / static_cast<double>(region_total_);
}

double SizeStatistics::second_to_largest_ratio(int code) const {
  const auto l = largest_sum_.at(static_cast<std::size_t>(code));
  return l == 0 ? 0.0 : static_cast<double>(second_sum_[static_cast<std::size_t>(code)]) / static_cast<double>(l);
}

double SizeStatistics::coexistence_frequency(int code) const {
  return samples_ == 0 ? 0.0 : static_cast<double>(coexist_.at(static_cast<std::size_t>(code))) / static_cast<double>(samples_);
}

}  // namespace ot12
