#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ot12/census.hpp"
#include "ot12/configuration.hpp"
#include "ot12/lattice.hpp"

namespace ot12 {

/// Unordered partition of a finite ground set into three nonempty blocks.
/// Blocks are kept sorted, and ordered by their smallest element.
class Partition3 {
 public:
  /// Throws std::invalid_argument for empty or overlapping blocks.
  explicit Partition3(std::array<std::vector<std::size_t>, 3> blocks);

  const std::vector<std::size_t>& block(std::size_t i) const { return blocks_.at(i); }
  const std::array<std::vector<std::size_t>, 3>& blocks() const noexcept { return blocks_; }
  /// Union of the blocks, sorted.
  std::vector<std::size_t> ground_set() const;

  bool operator==(const Partition3&) const = default;

 private:
  std::array<std::vector<std::size_t>, 3> blocks_;
};

/// P and Q are compatible when some block of P contains two blocks of Q (in
/// either direction; by complementation the two directions coincide).
/// Throws std::invalid_argument when the ground sets differ.
bool is_compatible(const Partition3& p, const Partition3& q);

/// All S(k, 3) partitions of {0, ..., k-1}.
std::vector<Partition3> all_partitions(std::size_t k);

struct CompatibleFamily {
  std::size_t size = 0;
  std::vector<Partition3> witness;
  std::uint64_t nodes = 0;  // branch-and-bound nodes visited
};

/// Largest pairwise-compatible family of 3-partitions of a k-set, by
/// branch-and-bound maximum clique on the compatibility graph. k in 3..7.
CompatibleFamily max_compatible_family(std::size_t k);

/// The chain {0},{1},{2..k-1} ; {0,1},{2},{3..k-1} ; ... of size k - 2.
std::vector<Partition3> nested_family(std::size_t k);

// ---------------------------------------------------------------------------

/// s x s tiling of B_{s(N+2)} by (N+2)-boxes, each carrying a centred N-box.
struct TilingSpec {
  int s = 1;
  int N = 1;
  int cx = 0;
  int cy = 0;

  BoxSpec window() const noexcept { return {s * (N + 2), cx, cy}; }
  /// The s^2 inner boxes B_N(i, j), row-major in (j, i).
  std::vector<BoxSpec> inner_boxes() const;
  std::vector<BoxSpec> tiles() const;
};

struct BoxPartition {
  BoxSpec box;
  std::size_t cluster = 0;
  Partition3 partition;
};

struct RejectedBox {
  BoxSpec box;
  std::string reason;
  std::vector<std::size_t> witness;  // e.g. a component that misses Y
};

struct PartitionFamilies {
  std::vector<BoxPartition> partitions;
  std::vector<RejectedBox> rejected;
};

/// For each box that is an encounter box for cluster `cluster` of `labels`,
/// the partition of Y = C ∩ rim induced by C \ B_{N+2}. Boxes whose
/// components miss Y are rejected with a witness.
PartitionFamilies partitions_from_encounter_boxes(const Configuration& cfg, const ClusterLabels& labels,
                                                  std::size_t cluster, const std::vector<BoxSpec>& boxes,
                                                  const Region& window);

struct ClusterFamilyCheck {
  std::size_t cluster = 0;
  std::size_t y_size = 0;
  std::size_t family_size = 0;
  bool pairwise_compatible = true;
  bool within_bound = true;  // family_size <= |Y| - 2
};

struct KeaneSample {
  std::size_t encounter_boxes = 0;
  std::size_t y_cap = 0;         // sum over clusters with |Y| >= 3 of |Y| - 2
  std::size_t rejected = 0;
  std::vector<ClusterFamilyCheck> families;
  bool ok = true;
};

struct KeaneReport {
  TilingSpec spec;
  LocalCode code;
  std::size_t samples = 0;
  std::size_t total_encounter_boxes = 0;
  std::size_t max_encounter_boxes = 0;
  std::size_t violations = 0;           // samples failing any bound
  std::size_t incompatible_families = 0;
  std::size_t oversize_families = 0;
  std::size_t cap_exceeded = 0;
  std::size_t perimeter_exceeded = 0;
  std::size_t rejected_boxes = 0;
  std::size_t outer_boundary_size = 0;  // exact |outer boundary of B_{s(N+2)}|
  std::size_t perimeter_formula = 0;    // 4 s (N + 4)
  double lower_bound = 0.0;             // 1/2 (c'/6a')^(2(N+2)^2+10) s^2
  double log_lower_bound = 0.0;
  std::vector<KeaneSample> series;

  double mean_encounter_boxes() const {
    return samples == 0 ? 0.0 : static_cast<double>(total_encounter_boxes) / static_cast<double>(samples);
  }
};

/// Encounter-box census on one configuration.
KeaneSample keane_sample(const Configuration& cfg, const TilingSpec& spec, LocalCode code);

class KeaneCensus {
 public:
  KeaneCensus(const TilingSpec& spec, LocalCode code, const Weights& w);
  void add(const Configuration& cfg);
  const KeaneReport& report() const noexcept { return report_; }

 private:
  KeaneReport report_;
};

}  // namespace ot12
