#include "ot12/sampler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ot12 {

std::vector<std::size_t> block_edges(const Geometry& g, std::size_t center, int radius) {
  if (radius < 1) throw std::invalid_argument("block radius must be >= 1");
  if (center >= g.vertex_count()) throw std::out_of_range("block centre out of range");
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<std::size_t> frontier{center};
  dist[center] = 0;
  std::vector<char> taken(g.edge_count(), 0);
  std::vector<std::size_t> edges;
  for (int d = 0; d < radius; ++d) {
    std::vector<std::size_t> next;
    for (std::size_t v : frontier) {
      for (EdgeKind k : kAllKinds) {
        const std::int32_t e = g.incident_edge(v, k);
        if (e == kExterior) continue;
        if (!taken[static_cast<std::size_t>(e)]) {
          taken[static_cast<std::size_t>(e)] = 1;
          edges.push_back(static_cast<std::size_t>(e));
        }
        const auto u = static_cast<std::size_t>(g.neighbor(v, k));
        if (dist[u] < 0) {
          dist[u] = d + 1;
          next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }
  return edges;
}

BlockTable::BlockTable(const Geometry& g, int radius) : radius_(radius) {
  blocks_.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) blocks_.emplace_back(g, block_edges(g, v, radius));
}

namespace {

bool first_valid(Configuration& work, const std::vector<std::size_t>& order, const LocalProblem& p, std::size_t depth) {
  if (depth == order.size()) return true;
  for (int bit = 1; bit >= 0; --bit) {
    work.set(order[depth], bit != 0);
    bool ok = true;
    for (std::size_t v : p.checks_at(depth)) ok = ok && work.local_code(v).valid();
    if (ok && first_valid(work, order, p, depth + 1)) return true;
  }
  return false;
}

}  // namespace

ChainState init_chain(const GeometryPtr& g, const Weights& w, std::uint64_t seed, int block_radius) {
  Configuration cfg = all_horizontal(g);
  if (!g->is_torus()) {
    if (!g->boundary().fixed) throw std::invalid_argument("sampling a window needs a fixed boundary");
    if (!is_valid(cfg)) {
      std::vector<std::size_t> order(g->edge_count());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      const LocalProblem p(*g, order);
      if (!first_valid(cfg, order, p, 0) || !is_valid(cfg)) {
        throw std::invalid_argument("fixed window boundary admits no valid configuration");
      }
    }
  }
  ChainState s{std::move(cfg), w, seed, block_radius, 0, Rng(seed), {}, std::make_shared<const BlockTable>(*g, block_radius), {}, {}, {}};
  return s;
}

bool heat_bath_update(ChainState& s, std::size_t center) {
  const LocalProblem& p = s.blocks->at(center);
  auto& patches = s.scratch_patches;
  auto& weights = s.scratch_weights;
  patches.clear();
  weights.clear();
  std::uint64_t current = 0;
  const auto edges = p.free_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (s.config.present(edges[i])) current |= std::uint64_t{1} << i;
  }
  double total = 0.0;
  for_each_completion(s.config, p, s.weights, [&](const Configuration&, std::uint64_t patch, double wt) {
    patches.push_back(patch);
    total += wt;
    weights.push_back(total);
  });
  if (patches.empty()) {
    throw std::logic_error("heat-bath block at vertex " + std::to_string(center) + " has no valid completion");
  }
  const double u = s.rng.uniform() * total;
  const auto pick = static_cast<std::size_t>(std::upper_bound(weights.begin(), weights.end(), u) - weights.begin());
  const std::uint64_t chosen = patches[std::min(pick, patches.size() - 1)];
  for (std::size_t i = 0; i < edges.size(); ++i) s.config.set(edges[i], (chosen >> i) & 1U);
  ++s.stats.block_updates;
  s.stats.block_support_total += patches.size();
  if (chosen != current) ++s.stats.block_changes;
  return chosen != current;
}

void heat_bath_sweep(ChainState& s) {
  auto& order = s.scratch_order;
  const std::size_t n = s.blocks->size();
  order.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[s.rng.below(i)]);
  for (std::size_t v : order) heat_bath_update(s, v);
  ++s.sweep_count;
}

double flip_ratio(const Configuration& cfg, std::size_t e, const Weights& w) {
  const Geometry& g = cfg.geometry();
  const auto ends = g.endpoints(e);
  const EdgeKind k = g.edge_kind(e);
  const std::uint8_t bit = static_cast<std::uint8_t>(1U << static_cast<unsigned>(k));
  double ratio = 1.0;
  for (std::size_t v : ends) {
    const LocalCode before = cfg.local_code(v);
    const LocalCode after{static_cast<std::uint8_t>(before.value ^ bit)};
    if (!after.valid()) return 0.0;
    ratio *= weight_of(after, w) / weight_of(before, w);
  }
  return ratio;
}

void metropolis_edge_flip(ChainState& s, std::size_t count) {
  const std::size_t m = s.config.edge_count();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t e = s.rng.below(m);
    ++s.stats.flip_proposals;
    const double ratio = flip_ratio(s.config, e, s.weights);
    if (ratio == 0.0) {
      ++s.stats.flip_rejected_invalid;
      continue;
    }
    if (ratio >= 1.0 || s.rng.uniform() < ratio) {
      s.config.flip(e);
      ++s.stats.flip_accepted;
    }
  }
}

RunDiagnostics run(const GeometryPtr& g, const Weights& w, const RunParams& params,
                   const std::function<void(std::size_t, const Configuration&)>& sink) {
  if (params.thinning == 0) throw std::invalid_argument("thinning must be >= 1");
  ChainState s = init_chain(g, w, params.seed, params.block_radius);
  RunDiagnostics diag;
  diag.distinct_tracked = g->edge_count() <= 64;
  std::unordered_set<std::uint64_t> seen;
  auto one_sweep = [&] {
    heat_bath_sweep(s);
    if (params.flips_per_sweep > 0) metropolis_edge_flip(s, params.flips_per_sweep);
    if (diag.distinct_tracked) seen.insert(s.config.low_word());
  };
  for (std::size_t i = 0; i < params.burn_in; ++i) one_sweep();
  diag.log_weight_trace.reserve(params.n_samples);
  for (std::size_t k = 0; k < params.n_samples; ++k) {
    for (std::size_t t = 0; t < params.thinning; ++t) one_sweep();
    diag.log_weight_trace.push_back(log_weight(s.config, w));
    if (sink) sink(k, s.config);
  }
  diag.stats = s.stats;
  diag.sweeps = s.sweep_count;
  diag.distinct_visited = seen.size();
  return diag;
}

}  // namespace ot12
