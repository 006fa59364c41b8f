#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ot12/configuration.hpp"
#include "ot12/exact.hpp"
#include "ot12/rng.hpp"

namespace ot12 {

/// Edges incident to some vertex within graph distance radius - 1 of
/// `center`, in breadth-first order from the centre. radius 1 gives the
/// centre's three edges.
std::vector<std::size_t> block_edges(const Geometry& g, std::size_t center, int radius);

/// Per-centre block problems for one geometry and radius.
class BlockTable {
 public:
  BlockTable(const Geometry& g, int radius);
  const LocalProblem& at(std::size_t center) const { return blocks_[center]; }
  std::size_t size() const noexcept { return blocks_.size(); }
  int radius() const noexcept { return radius_; }

 private:
  int radius_;
  std::vector<LocalProblem> blocks_;
};

struct ChainStats {
  std::uint64_t block_updates = 0;
  std::uint64_t block_changes = 0;       // updates that moved the state
  std::uint64_t block_support_total = 0; // sum of conditional support sizes
  std::uint64_t flip_proposals = 0;
  std::uint64_t flip_rejected_invalid = 0;
  std::uint64_t flip_accepted = 0;
};

struct ChainState {
  Configuration config;
  Weights weights;
  std::uint64_t rng_seed = 0;
  int block_radius = 2;
  std::uint64_t sweep_count = 0;
  Rng rng;
  ChainStats stats;
  std::shared_ptr<const BlockTable> blocks;

  // Scratch for block updates; not part of the chain's state.
  std::vector<std::uint64_t> scratch_patches;
  std::vector<double> scratch_weights;
  std::vector<std::size_t> scratch_order;
};

/// The all-horizontal state on a torus. Windows need a fixed boundary that
/// admits a valid configuration; one is found by depth-first search.
ChainState init_chain(const GeometryPtr& g, const Weights& w, std::uint64_t seed, int block_radius = 2);

/// Resamples the block around `center` from its exact Gibbs conditional.
/// Returns true if the configuration changed.
bool heat_bath_update(ChainState& s, std::size_t center);

/// One block heat-bath update per vertex, centres in a fresh random order.
void heat_bath_sweep(ChainState& s);

/// `count` single-edge Metropolis proposals. Flips creating a degree 0 or 3
/// vertex are rejected outright; the rest are accepted with probability
/// min(1, new/old) over the two endpoint weights.
void metropolis_edge_flip(ChainState& s, std::size_t count);

/// Acceptance ratio of flipping e, or 0 if the flip breaks the 1-2 law.
double flip_ratio(const Configuration& cfg, std::size_t e, const Weights& w);

struct RunParams {
  std::uint64_t seed = 1;
  std::size_t burn_in = 1000;
  std::size_t n_samples = 100;
  std::size_t thinning = 10;
  int block_radius = 2;
  std::size_t flips_per_sweep = 0;  // Metropolis supplement after each sweep
};

struct RunDiagnostics {
  std::vector<double> log_weight_trace;  // one entry per kept sample
  ChainStats stats;
  std::uint64_t sweeps = 0;
  std::uint64_t distinct_visited = 0;    // only tracked when edges <= 64
  bool distinct_tracked = false;
};

/// Runs one chain: burn_in sweeps, then n_samples kept samples, one every
/// `thinning` sweeps. Deterministic given (g, w, params).
RunDiagnostics run(const GeometryPtr& g, const Weights& w, const RunParams& params,
                   const std::function<void(std::size_t, const Configuration&)>& sink);

}  // namespace ot12
