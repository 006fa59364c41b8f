#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ot12/configuration.hpp"
#include "ot12/lattice.hpp"

namespace ot12 {

/// How two same-code vertices are joined into one homogeneous cluster.
/// Lattice: any lattice edge between them. PresentOnly: only a present edge.
enum class Adjacency { Lattice, PresentOnly };

/// Observation region: the vertices a census runs over, plus the rim whose
/// contact stands in for "infinite".
class Region {
 public:
  /// Whole geometry; the rim is every vertex with an exterior neighbour
  /// (empty on a torus).
  static Region whole(const Geometry& g);
  /// The box's vertices; the rim is the box's boundary vertices.
  static Region box(const Geometry& g, const BoxSpec& b);
  /// The box plus its outer boundary (exterior vertices adjacent to it);
  /// the rim is that outer boundary.
  static Region box_with_rim(const Geometry& g, const BoxSpec& b);

  bool member(std::size_t v) const noexcept { return flags_[v] & kMember; }
  bool rim(std::size_t v) const noexcept { return flags_[v] & kRim; }
  std::span<const std::size_t> vertices() const noexcept { return members_; }
  std::span<const std::size_t> rim_vertices() const noexcept { return rim_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  static constexpr std::uint8_t kMember = 1;
  static constexpr std::uint8_t kRim = 2;
  std::vector<std::uint8_t> flags_;
  std::vector<std::size_t> members_;
  std::vector<std::size_t> rim_;
};

struct Cluster {
  LocalCode code;
  std::vector<std::size_t> members;  // sorted dense vertex indices
  bool touches_window_boundary = false;

  std::size_t size() const noexcept { return members.size(); }
};

/// Cluster labelling of one code over a region.
struct ClusterLabels {
  LocalCode code;
  std::vector<std::int32_t> label;  // per vertex, -1 if not in any cluster
  std::vector<Cluster> clusters;    // ordered by smallest member
};

/// Maximal connected sets of region vertices carrying `code`, via
/// union-find. Throws std::invalid_argument if cfg violates the 1-2 law.
ClusterLabels label_clusters(const Configuration& cfg, LocalCode code, const Region& region,
                             Adjacency adjacency = Adjacency::Lattice);

std::vector<Cluster> census(const Configuration& cfg, LocalCode code, const Region& region,
                            Adjacency adjacency = Adjacency::Lattice);
std::vector<Cluster> census(const Configuration& cfg, LocalCode code, Adjacency adjacency = Adjacency::Lattice);

struct MeetingResult {
  std::size_t count = 0;
  std::vector<std::size_t> clusters;  // indices into ClusterLabels::clusters, ascending
};

/// Distinct clusters with at least one member in `vertices`; optionally only
/// those touching the rim.
MeetingResult clusters_meeting(const ClusterLabels& labels, std::span<const std::size_t> vertices,
                               bool boundary_only = false);

struct EncounterResult {
  bool encounter = false;
  std::optional<std::size_t> cluster;                 // cluster containing B_n, if any
  std::vector<std::vector<std::size_t>> components;   // of C \ B_{n+2}, each sorted
  std::vector<bool> component_reaches_rim;
  std::string reason;
};

/// B_n is an encounter box when one cluster C contains all of B_n and
/// C \ B_{n+2} has exactly three components, each reaching the rim.
/// Throws std::invalid_argument unless B_{n+2} and its neighbours lie in the
/// region away from the rim.
EncounterResult is_encounter_box(const Configuration& cfg, const BoxSpec& b, LocalCode code, const Region& region,
                                 Adjacency adjacency = Adjacency::Lattice);
EncounterResult is_encounter_box(const ClusterLabels& labels, const Configuration& cfg, const BoxSpec& b,
                                 const Region& region, Adjacency adjacency = Adjacency::Lattice);

// ---------------------------------------------------------------------------

struct CodeSummary {
  std::size_t clusters = 0;
  std::size_t largest = 0;
  std::size_t second_largest = 0;
  std::size_t boundary_clusters = 0;
};

struct CensusReport {
  std::size_t region_size = 0;
  std::array<CodeSummary, 8> by_code{};  // indices 1..6 used
  std::array<std::vector<Cluster>, 8> clusters{};
};

CensusReport census_report(const Configuration& cfg, const Region& region, Adjacency adjacency = Adjacency::Lattice);

/// Aggregate of census reports over a sample stream. All sums are integers
/// so merging is exact and order independent.
class SizeStatistics {
 public:
  void add(const CensusReport& r);
  void merge(const SizeStatistics& other);

  std::uint64_t samples() const noexcept { return samples_; }
  /// Mean over samples of largest / region size.
  double largest_fraction(int code) const;
  double second_largest_fraction(int code) const;
  /// sum(second largest) / sum(largest); 0 when no clusters were seen.
  double second_to_largest_ratio(int code) const;
  /// Fraction of samples with at least two rim-touching clusters.
  double coexistence_frequency(int code) const;

  bool operator==(const SizeStatistics&) const = default;

 private:
  std::uint64_t samples_ = 0;
  std::uint64_t region_total_ = 0;
  std::array<std::uint64_t, 8> largest_sum_{};
  std::array<std::uint64_t, 8> second_sum_{};
  std::array<std::uint64_t, 8> coexist_{};
};

}  // namespace ot12
