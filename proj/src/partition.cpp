#include "ot12/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ot12/surgery.hpp"

namespace ot12 {

Partition3::Partition3(std::array<std::vector<std::size_t>, 3> blocks) : blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw std::invalid_argument("duplicate element in block");
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  const auto all = ground_set();
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw std::invalid_argument("partition blocks overlap");
}

std::vector<std::size_t> Partition3::ground_set() const {
  std::vector<std::size_t> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

// Some block of `outer` contains two blocks of `inner`.
bool holds_two(const Partition3& outer, const Partition3& inner) {
  for (const auto& big : outer.blocks()) {
    for (std::size_t skip = 0; skip < 3; ++skip) {
      bool ok = true;
      for (std::size_t j = 0; j < 3 && ok; ++j) {
        if (j == skip) continue;
        const auto& small = inner.block(j);
        ok = std::includes(big.begin(), big.end(), small.begin(), small.end());
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

bool is_compatible(const Partition3& p, const Partition3& q) {
  if (p.ground_set() != q.ground_set()) throw std::invalid_argument("partitions are over different ground sets");
  return holds_two(p, q) || holds_two(q, p);
}

std::vector<Partition3> all_partitions(std::size_t k) {
  if (k < 3) throw std::invalid_argument("a 3-partition needs at least 3 elements");
  if (k > 20) throw std::invalid_argument("ground set too large to enumerate");
  std::vector<Partition3> out;
  // Restricted growth strings over {0, 1, 2} using all three labels.
  std::vector<int> rgs(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
    if (i == k) {
      if (top != 2) return;
      std::array<std::vector<std::size_t>, 3> blocks;
      for (std::size_t j = 0; j < k; ++j) blocks[static_cast<std::size_t>(rgs[j])].push_back(j);
      out.emplace_back(std::move(blocks));
      return;
    }
    for (int label = 0; label <= std::min(top + 1, 2); ++label) {
      rgs[i] = label;
      rec(i + 1, std::max(top, label));
    }
  };
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

namespace {

class MaxClique {
 public:
  explicit MaxClique(const std::vector<std::vector<char>>& adj) : adj_(adj) {}

  std::vector<std::size_t> solve() {
    std::vector<std::size_t> all(adj_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> current;
    expand(current, all);
    return best_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  // Greedy colouring: candidates re-ordered by colour class, with colour
  // numbers as the upper bound on any clique inside the prefix.
  void colour(const std::vector<std::size_t>& cand, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cand) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        const bool clash = std::any_of(classes[c].begin(), classes[c].end(), [&](std::size_t u) { return adj_[u][v] != 0; });
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    order.clear();
    bound.clear();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t v : classes[c]) {
        order.push_back(v);
        bound.push_back(c + 1);
      }
    }
  }

  void expand(std::vector<std::size_t>& current, std::vector<std::size_t> cand) {
    ++nodes_;
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour(cand, order, bound);
    while (!order.empty()) {
      if (current.size() + bound.back() <= best_.size()) return;
      const std::size_t v = order.back();
      order.pop_back();
      bound.pop_back();
      current.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t u : order) {
        if (adj_[v][u]) next.push_back(u);
      }
      if (next.empty()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, std::move(next));
      }
      current.pop_back();
    }
  }

  const std::vector<std::vector<char>>& adj_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

CompatibleFamily max_compatible_family(std::size_t k) {
  if (k < 3 || k > 7) throw std::invalid_argument("max_compatible_family supports ground sets of size 3..7");
  const auto parts = all_partitions(k);
  std::vector<std::vector<char>> adj(parts.size(), std::vector<char>(parts.size(), 0));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      adj[i][j] = adj[j][i] = is_compatible(parts[i], parts[j]) ? 1 : 0;
    }
  }
  MaxClique mc(adj);
  const auto clique = mc.solve();
  CompatibleFamily out;
  out.size = clique.size();
  out.nodes = mc.nodes();
  std::vector<std::size_t> sorted = clique;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i : sorted) out.witness.push_back(parts[i]);
  return out;
}

std::vector<Partition3> nested_family(std::size_t k) {
  if (k < 3) throw std::invalid_argument("nested family needs k >= 3");
  std::vector<Partition3> out;
  for (std::size_t m = 1; m + 2 <= k; ++m) {
    std::array<std::vector<std::size_t>, 3> blocks;
    for (std::size_t i = 0; i < m; ++i) blocks[0].push_back(i);
    blocks[1].push_back(m);
    for (std::size_t i = m + 1; i < k; ++i) blocks[2].push_back(i);
    out.emplace_back(std::move(blocks));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<BoxSpec> TilingSpec::tiles() const {
  const BoxSpec w = window();
  std::vector<BoxSpec> out;
  const int m = N + 2;
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      const int ox = w.x0() + i * m;
      const int oy = w.y0() + j * m;
      out.push_back({m, ox + m / 2, oy + m / 2});
    }
  }
  return out;
}

std::vector<BoxSpec> TilingSpec::inner_boxes() const {
  std::vector<BoxSpec> out;
  for (const BoxSpec& t : tiles()) out.push_back({N, t.cx, t.cy});
  return out;
}

PartitionFamilies partitions_from_encounter_boxes(const Configuration& cfg, const ClusterLabels& labels,
                                                  std::size_t cluster, const std::vector<BoxSpec>& boxes,
                                                  const Region& window) {
  PartitionFamilies out;
  const Cluster& c = labels.clusters.at(cluster);
  std::vector<char> in_y(cfg.geometry().vertex_count(), 0);
  for (std::size_t v : c.members) in_y[v] = window.rim(v);

  for (const BoxSpec& b : boxes) {
    const EncounterResult r = is_encounter_box(labels, cfg, b, window);
    if (!r.cluster || *r.cluster != cluster) continue;
    if (r.components.size() == 3 && !r.encounter) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (!r.component_reaches_rim[i]) {
          out.rejected.push_back({b, "component of C \\ B_{N+2} misses Y", r.components[i]});
          break;
        }
      }
      continue;
    }
    if (!r.encounter) continue;
    std::array<std::vector<std::size_t>, 3> blocks;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t v : r.components[i]) {
        if (in_y[v]) blocks[i].push_back(v);
      }
    }
    out.partitions.push_back({b, cluster, Partition3(std::move(blocks))});
  }
  return out;
}

KeaneSample keane_sample(const Configuration& cfg, const TilingSpec& spec, LocalCode code) {
  const Geometry& g = cfg.geometry();
  const Region region = Region::box_with_rim(g, spec.window());
  const ClusterLabels labels = label_clusters(cfg, code, region);
  const auto boxes = spec.inner_boxes();

  // Only clusters containing some whole inner box can host an encounter box.
  std::vector<std::size_t> candidates;
  for (const BoxSpec& b : boxes) {
    const std::int32_t lab = labels.label[g.vertex_index(g.wrap(box_vertices(b).front()))];
    if (lab >= 0) candidates.push_back(static_cast<std::size_t>(lab));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  KeaneSample out;
  for (const Cluster& c : labels.clusters) {
    std::size_t y = 0;
    for (std::size_t v : c.members) y += region.rim(v) ? 1 : 0;
    if (y >= 3) out.y_cap += y - 2;
  }
  for (std::size_t cl : candidates) {
    const PartitionFamilies fam = partitions_from_encounter_boxes(cfg, labels, cl, boxes, region);
    out.rejected += fam.rejected.size();
    if (fam.partitions.empty()) continue;
    ClusterFamilyCheck check;
    check.cluster = cl;
    for (std::size_t v : labels.clusters[cl].members) check.y_size += region.rim(v) ? 1 : 0;
    check.family_size = fam.partitions.size();
    for (std::size_t i = 0; i < fam.partitions.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.partitions.size(); ++j) {
        if (!is_compatible(fam.partitions[i].partition, fam.partitions[j].partition)) check.pairwise_compatible = false;
      }
    }
    check.within_bound = check.y_size >= 2 && check.family_size <= check.y_size - 2;
    out.encounter_boxes += check.family_size;
    out.ok = out.ok && check.pairwise_compatible && check.within_bound;
    out.families.push_back(check);
  }
  out.ok = out.ok && out.encounter_boxes <= out.y_cap && out.encounter_boxes <= region.rim_vertices().size();
  return out;
}

KeaneCensus::KeaneCensus(const TilingSpec& spec, LocalCode code, const Weights& w) {
  if (spec.s < 1 || spec.N < 1) throw std::invalid_argument("tiling needs s >= 1 and N >= 1");
  report_.spec = spec;
  report_.code = code;
  report_.perimeter_formula = static_cast<std::size_t>(4 * spec.s * (spec.N + 4));
  report_.log_lower_bound = log_probability_factor(spec.N, w) + 2.0 * std::log(static_cast<double>(spec.s));
  report_.lower_bound = probability_factor(spec.N, w) * static_cast<double>(spec.s) * static_cast<double>(spec.s);
}

void KeaneCensus::add(const Configuration& cfg) {
  KeaneSample s = keane_sample(cfg, report_.spec, report_.code);
  KeaneReport& r = report_;
  if (r.outer_boundary_size == 0) {
    r.outer_boundary_size = Region::box_with_rim(cfg.geometry(), r.spec.window()).rim_vertices().size();
  }
  ++r.samples;
  r.total_encounter_boxes += s.encounter_boxes;
  r.max_encounter_boxes = std::max(r.max_encounter_boxes, s.encounter_boxes);
  r.rejected_boxes += s.rejected;
  for (const auto& f : s.families) {
    r.incompatible_families += f.pairwise_compatible ? 0 : 1;
    r.oversize_families += f.within_bound ? 0 : 1;
  }
  r.cap_exceeded += s.encounter_boxes > s.y_cap ? 1 : 0;
  r.perimeter_exceeded += s.encounter_boxes > r.outer_boundary_size ? 1 : 0;
  r.violations += s.ok ? 0 : 1;
  r.series.push_back(std::move(s));
}

}  // namespace ot12
