#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ot12/census.hpp"
#include "ot12/configuration.hpp"
#include "ot12/lattice.hpp"

namespace ot12 {

/// Raised when a surgery cannot produce a valid configuration; carries the
/// offending vertex.
class SurgeryFailure : public std::runtime_error {
 public:
  SurgeryFailure(const std::string& what, std::size_t vertex)
      : std::runtime_error(what + " (vertex " + std::to_string(vertex) + ")"), vertex_(vertex) {}
  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

class InsufficientClusters : public std::runtime_error {
 public:
  InsufficientClusters(const std::string& what, std::size_t admissible)
      : std::runtime_error(what), admissible_(admissible) {}
  std::size_t admissible() const noexcept { return admissible_; }

 private:
  std::size_t admissible_;
};

/// Number of vertices a box surgery around B_N may touch: the 2(N+2)^2
/// vertices of B_{N+2} plus five outside vertices on each corner hexagon.
std::uint64_t surgery_bound(int N);

/// 1/2 * (c'/(6 a'))^(2(N+2)^2 + 10) with c' = min and a' = max of the weights.
double probability_factor(int N, const Weights& w);
double log_probability_factor(int N, const Weights& w);

struct SurgeryReport {
  Configuration input;
  Configuration output;
  std::vector<std::size_t> modified_vertices;  // local code changed, ascending
  std::vector<std::size_t> modified_edges;     // presence changed, ascending
  std::uint64_t bound = 0;
  double factor = 0.0;
  double log_factor = 0.0;
};

/// Box rewiring around B_N: every interior edge of B_{N+2} becomes
/// present iff horizontal, boundary edges are kept, then both TypeIII
/// corners are repaired on their corner hexagons. Afterwards B_N is all
/// {001}. `cfg` must be valid.
SurgeryReport rewire_box_interior(const Configuration& cfg, int N, int cx, int cy, const Weights& w);

/// Repairs a degree-3 corner v1 = hexagon[0] by the removal/addition cascade
/// around the hexagon v1..v6. Leaves cfg unchanged when v1 already has degree
/// 1 or 2. Throws std::invalid_argument if v1 has degree 0.
void corner_repair(Configuration& cfg, const std::array<std::size_t, 6>& hexagon);

/// Edge joining hexagon[i] and hexagon[i + 1 mod 6].
std::array<std::size_t, 6> hexagon_sides(const Geometry& g, const std::array<std::size_t, 6>& hexagon);

struct Trident {
  std::array<std::size_t, 3> u{};
  std::size_t clusters_meeting = 0;     // rim-touching clusters meeting B_{N+2}
  std::size_t admissible_clusters = 0;  // of those, disjoint from the exclusion set
};

/// Picks three boundary vertices of B_{N+2} in three distinct rim-touching
/// `code` clusters, none of which meets the 28-vertex exclusion set; the
/// lexicographically smallest such triple. Clusters are taken over `region`.
/// Throws InsufficientClusters when no triple exists.
Trident select_trident(const Configuration& cfg, int N, int cx, int cy, LocalCode code, const Region& region,
                       std::size_t threshold = 31);

struct EncounterChecklist {
  bool valid = false;
  bool core_all_001 = false;
  bool gatekeeping = false;  // no boundary vertex but u1, u2, u3 carries {001}
  std::vector<std::size_t> failing_vertices;

  bool passed() const noexcept { return valid && core_all_001 && gatekeeping; }
};

EncounterChecklist check_encounter_construction(const Configuration& out, int N, int cx, int cy,
                                                const std::array<std::size_t, 3>& u);

/// Construction making B_N an encounter box for the three clusters
/// through u1, u2, u3. Steps, in order: horizontal contour edges on; e_i set
/// to the negation of e_b at every other boundary vertex; v1p and w1q chosen
/// to keep p and q legal; corner hexagons alternated; B_N cut out and made
/// all-horizontal. Residual violations are repaired only at the TypeIII
/// corners; anything else raises SurgeryFailure.
SurgeryReport build_encounter_box(const Configuration& cfg, int N, int cx, int cy, const std::array<std::size_t, 3>& u,
                                  const Weights& w);

}  // namespace ot12
