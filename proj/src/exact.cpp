#include "ot12/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ot12 {

LocalProblem::LocalProblem(const Geometry& g, std::vector<std::size_t> free_edges) : free_edges_(std::move(free_edges)) {
  std::vector<std::int64_t> last(g.vertex_count(), -1);
  for (std::size_t i = 0; i < free_edges_.size(); ++i) {
    const std::size_t e = free_edges_[i];
    if (e >= g.edge_count()) throw std::out_of_range("free edge index out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (free_edges_[j] == e) throw std::invalid_argument("duplicate free edge " + std::to_string(e));
    }
    for (std::size_t v : g.endpoints(e)) {
      if (last[v] < 0) vertices_.push_back(v);
      last[v] = static_cast<std::int64_t>(i);
    }
  }
  check_begin_.assign(free_edges_.size() + 1, 0);
  for (std::size_t v : vertices_) ++check_begin_[static_cast<std::size_t>(last[v]) + 1];
  for (std::size_t d = 1; d < check_begin_.size(); ++d) check_begin_[d] += check_begin_[d - 1];
  check_list_.resize(vertices_.size());
  std::vector<std::size_t> fill(check_begin_.begin(), check_begin_.end() - 1);
  for (std::size_t v : vertices_) check_list_[fill[static_cast<std::size_t>(last[v])]++] = v;
}

namespace {

void require_cap(std::size_t edges, std::size_t cap) {
  if (edges > cap) {
    throw EnumerationCapExceeded("geometry has " + std::to_string(edges) + " edges, enumeration cap is " +
                                 std::to_string(cap) + "; raise the cap or use the sampler");
  }
}

std::vector<std::size_t> all_edges(const Geometry& g) {
  std::vector<std::size_t> e(g.edge_count());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = i;
  return e;
}

// Vertices with no indexed edge are never visited by the DFS; they can only
// be satisfied by their stubs.
bool edgeless_vertices_ok(const Configuration& cfg) {
  const Geometry& g = cfg.geometry();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    bool has_edge = false;
    for (EdgeKind k : kAllKinds) has_edge = has_edge || g.incident_edge(v, k) != kExterior;
    if (!has_edge && !cfg.local_code(v).valid()) return false;
  }
  return true;
}

}  // namespace

void enumerate_valid(const GeometryPtr& g, const std::function<void(const Configuration&)>& sink,
                     const std::optional<WindowBoundary>& boundary, EnumerateOptions options) {
  require_cap(g->edge_count(), options.max_edges);
  GeometryPtr geom = g;
  if (boundary) {
    if (g->is_torus()) throw std::invalid_argument("a torus takes no boundary assignment");
    geom = std::make_shared<const Geometry>(Geometry::window(g->width(), g->height(), *boundary));
  }
  Configuration work(geom);
  if (!edgeless_vertices_ok(work)) return;
  const LocalProblem problem(*geom, all_edges(*geom));
  for_each_completion(work, problem, Weights{1.0, 1.0, 1.0},
                      [&](const Configuration& cfg, std::uint64_t, double) { sink(cfg); });
}

std::uint64_t count_valid(const GeometryPtr& g, EnumerateOptions options) {
  std::uint64_t n = 0;
  enumerate_valid(g, [&](const Configuration&) { ++n; }, std::nullopt, options);
  return n;
}

PartitionFunction partition_function(const GeometryPtr& g, const Weights& w, EnumerateOptions options) {
  require_cap(g->edge_count(), options.max_edges);
  // Weights are scaled by their maximum so the sum cannot overflow.
  const double top = std::max({w.a, w.b, w.c});
  const Weights scaled{w.a / top, w.b / top, w.c / top};
  Configuration work(g);
  PartitionFunction out;
  if (!edgeless_vertices_ok(work)) {
    out.log_z = -std::numeric_limits<double>::infinity();
    return out;
  }
  const LocalProblem problem(*g, all_edges(*g));
  double sum = 0.0;
  for_each_completion(work, problem, scaled, [&](const Configuration&, std::uint64_t, double wt) {
    sum += wt;
    ++out.count;
  });
  // Vertices without an indexed edge contribute a constant factor.
  double fixed = 1.0;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    bool has_edge = false;
    for (EdgeKind k : kAllKinds) has_edge = has_edge || g->incident_edge(v, k) != kExterior;
    if (!has_edge) fixed *= weight_of(work.local_code(v), scaled);
  }
  sum *= fixed;
  out.log_z = std::log(sum) + static_cast<double>(g->vertex_count()) * std::log(top);
  out.z = sum * std::pow(top, static_cast<double>(g->vertex_count()));
  return out;
}

Configuration Distribution::apply(const Configuration& base, std::size_t i) const {
  Configuration cfg = base;
  const std::uint64_t patch = patches.at(i);
  for (std::size_t j = 0; j < edges.size(); ++j) cfg.set(edges[j], (patch >> j) & 1U);
  return cfg;
}

double Distribution::probability_of(const Configuration& cfg) const {
  std::uint64_t patch = 0;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (cfg.present(edges[j])) patch |= std::uint64_t{1} << j;
  }
  const auto it = std::find(patches.begin(), patches.end(), patch);
  return it == patches.end() ? 0.0 : probabilities[static_cast<std::size_t>(it - patches.begin())];
}

Distribution gibbs_conditional(const Configuration& exterior, std::span<const std::size_t> free_edges, const Weights& w,
                               std::size_t max_free) {
  if (free_edges.size() > max_free) {
    throw EnumerationCapExceeded("window has " + std::to_string(free_edges.size()) + " free edges, cap is " +
                                 std::to_string(max_free));
  }
  const LocalProblem problem(exterior.geometry(), {free_edges.begin(), free_edges.end()});
  Configuration work = exterior;
  Distribution out;
  out.edges.assign(free_edges.begin(), free_edges.end());
  double total = 0.0;
  for_each_completion(work, problem, w, [&](const Configuration&, std::uint64_t patch, double wt) {
    out.patches.push_back(patch);
    out.probabilities.push_back(wt);
    total += wt;
  });
  if (out.patches.empty() || !(total > 0.0)) {
    throw FrozenBoundary("frozen boundary: no assignment of the " + std::to_string(free_edges.size()) +
                         " free edges satisfies the 1-2 law");
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

Distribution exact_distribution(const GeometryPtr& g, const Weights& w, std::size_t max_edges) {
  Configuration base(g);
  if (!edgeless_vertices_ok(base)) throw FrozenBoundary("a vertex without edges violates the 1-2 law");
  const auto edges = all_edges(*g);
  return gibbs_conditional(base, edges, w, max_edges);
}

}  // namespace ot12
