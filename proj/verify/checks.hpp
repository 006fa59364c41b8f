#pragma once

// The acceptance suite. Each check returns one result line; Level::Quick
// shrinks sample counts for `ot12 verify --quick`.

#include <string>
#include <vector>

namespace ot12::checks {

enum class Level { Quick, Full };

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

Result enumeration_oracle(Level level);
Result sampler_oracle(Level level);
Result surgery_validity(Level level);
Result corner_repair_exhaustive(Level level);
Result family_bound(Level level);
Result encounter_pipeline(Level level);
Result keane_bounds(Level level);
/// Runs `cli` twice per subcommand with the same seed and compares outputs.
Result reproducibility(const std::string& cli, const std::string& scratch_dir, Level level);

/// Checks 1-7, plus 8 when `cli` is nonempty.
std::vector<Result> run_all(Level level, const std::string& cli = {}, const std::string& scratch_dir = {});

/// "[PASS] 3 surgery validity (1.2s): ..."
std::string format(const Result& r);

}  // namespace ot12::checks
