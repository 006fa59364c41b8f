#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ot12/configuration.hpp"

namespace ot12 {

/// A set of free edges together with the vertices whose code depends on
/// them, ordered for depth-first assignment. A vertex is checked at the
/// depth where its last free edge is assigned.
class LocalProblem {
 public:
  LocalProblem(const Geometry& g, std::vector<std::size_t> free_edges);

  std::span<const std::size_t> free_edges() const noexcept { return free_edges_; }
  std::span<const std::size_t> vertices() const noexcept { return vertices_; }
  /// Vertices checked right after free edge `depth` is assigned.
  std::span<const std::size_t> checks_at(std::size_t depth) const noexcept {
    return {check_list_.data() + check_begin_[depth], check_begin_[depth + 1] - check_begin_[depth]};
  }

 private:
  std::vector<std::size_t> free_edges_;
  std::vector<std::size_t> vertices_;
  std::vector<std::size_t> check_list_;
  std::vector<std::size_t> check_begin_;
};

namespace detail {

template <class Sink>
void completion_dfs(Configuration& work, const LocalProblem& p, const Weights& w, std::size_t depth,
                    std::uint64_t patch, double weight, Sink& sink) {
  const auto edges = p.free_edges();
  if (depth == edges.size()) {
    sink(work, patch, weight);
    return;
  }
  const std::size_t e = edges[depth];
  for (int bit = 0; bit < 2; ++bit) {
    work.set(e, bit != 0);
    double wt = weight;
    for (std::size_t v : p.checks_at(depth)) {
      wt *= weight_of(work.local_code(v), w);
      if (wt == 0.0) break;
    }
    if (wt != 0.0) {
      completion_dfs(work, p, w, depth + 1, bit ? (patch | (std::uint64_t{1} << depth)) : patch, wt, sink);
    }
  }
}

}  // namespace detail

/// Calls sink(work, patch, weight) for every assignment of p's free edges
/// under which all of p's vertices satisfy the 1-2 law. `weight` is the
/// product of the vertex weights over p's vertices; bit i of `patch` is the
/// value of free edge i. `work` holds the fixed edges and is restored to
/// its original free-edge values on return.
template <class Sink>
void for_each_completion(Configuration& work, const LocalProblem& p, const Weights& w, Sink&& sink) {
  if (p.free_edges().size() > 64) throw std::invalid_argument("at most 64 free edges per local problem");
  std::uint64_t saved = 0;
  for (std::size_t i = 0; i < p.free_edges().size(); ++i) {
    if (work.present(p.free_edges()[i])) saved |= std::uint64_t{1} << i;
  }
  if (p.free_edges().empty()) {
    double wt = 1.0;
    for (std::size_t v : p.vertices()) wt *= weight_of(work.local_code(v), w);
    if (wt != 0.0) sink(work, std::uint64_t{0}, wt);
    return;
  }
  detail::completion_dfs(work, p, w, 0, 0, 1.0, sink);
  for (std::size_t i = 0; i < p.free_edges().size(); ++i) work.set(p.free_edges()[i], (saved >> i) & 1U);
}

// ---------------------------------------------------------------------------

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrozenBoundary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  std::size_t max_edges = 40;
};

/// Every configuration on g satisfying the 1-2 law at every vertex, once
/// each, in depth-first order over edges in canonical order. On a window
/// the exterior stubs come from `boundary` when given, else from g.
void enumerate_valid(const GeometryPtr& g, const std::function<void(const Configuration&)>& sink,
                     const std::optional<WindowBoundary>& boundary = std::nullopt, EnumerateOptions options = {});

std::uint64_t count_valid(const GeometryPtr& g, EnumerateOptions options = {});

struct PartitionFunction {
  double z = 0.0;
  double log_z = 0.0;
  std::uint64_t count = 0;
};

/// Sum over valid configurations of the product of vertex weights.
PartitionFunction partition_function(const GeometryPtr& g, const Weights& w, EnumerateOptions options = {});

/// Conditional law of the free edges given everything else.
struct Distribution {
  std::vector<std::size_t> edges;          // free edges; patch bit i <-> edges[i]
  std::vector<std::uint64_t> patches;      // distinct, in enumeration order
  std::vector<double> probabilities;

  Configuration apply(const Configuration& base, std::size_t i) const;
  /// Probability of the patch read off cfg, 0 if outside the support.
  double probability_of(const Configuration& cfg) const;
};

/// Gibbs conditional on the edge set `free_edges`, with all other edges of
/// `exterior` held fixed. Probabilities are proportional to the product of
/// the weights of every vertex incident to a free edge. Throws FrozenBoundary
/// when no assignment is valid.
Distribution gibbs_conditional(const Configuration& exterior, std::span<const std::size_t> free_edges, const Weights& w,
                               std::size_t max_free = 30);

/// Exact Gibbs distribution over all configurations of a small geometry.
Distribution exact_distribution(const GeometryPtr& g, const Weights& w, std::size_t max_edges = 30);

}  // namespace ot12
