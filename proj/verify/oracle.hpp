#pragma once

// Brute-force reference implementations. They recompute adjacency from the
// coordinate rule and never call into the library's enumeration, union-find
// or clique code, so agreement with the library is evidence, not tautology.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ot12/census.hpp"
#include "ot12/configuration.hpp"
#include "ot12/partition.hpp"

namespace ot12::oracle {

/// Every edge subset of g (as a bitmask over dense edge indices) in which all
/// vertices have degree 1 or 2, ascending. Window stubs follow g's boundary.
/// Requires edge_count <= 24.
std::vector<std::uint64_t> valid_masks(const Geometry& g);

/// Sum over valid_masks of the product of vertex weights.
double partition_function(const Geometry& g, const Weights& w);

/// Vertex weight product of one mask, 0 if invalid.
double mask_weight(const Geometry& g, std::uint64_t mask, const Weights& w);

/// Components of `code` vertices by breadth-first search, restricted to
/// `member` (all vertices when empty). Each component sorted; components
/// sorted by smallest vertex.
std::vector<std::vector<std::size_t>> bfs_clusters(const Configuration& cfg, LocalCode code,
                                                   const std::vector<bool>& member = {},
                                                   Adjacency adjacency = Adjacency::Lattice);

/// Compatibility by trying all 3! x 3! block orderings in both directions.
bool compatible_by_orderings(const Partition3& p, const Partition3& q);

/// All 3-block partitions of {0..k-1} by brute force over 3^k labellings.
std::vector<Partition3> partitions_by_labelling(std::size_t k);

/// Largest pairwise-compatible family by plain exhaustive search (k <= 5).
std::size_t max_family_exhaustive(std::size_t k);

}  // namespace ot12::oracle
