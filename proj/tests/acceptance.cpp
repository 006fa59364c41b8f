// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: acceptance [--quick] [--only <id>] [--cli <path>] [--scratch <dir>]

#include <cstdio>
#include <cstring>
#include <string>

#include "checks.hpp"

int main(int argc, char** argv) {
  using namespace ot12::checks;
  Level level = Level::Full;
  int only = 0;
  std::string cli;
  std::string scratch;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) {
      level = Level::Quick;
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--cli") && i + 1 < argc) {
      cli = argv[++i];
    } else if (!std::strcmp(argv[i], "--scratch") && i + 1 < argc) {
      scratch = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--only <id>] [--cli <path>] [--scratch <dir>]\n", argv[0]);
      return 2;
    }
  }
  Result (*const table[])(Level) = {enumeration_oracle, sampler_oracle,  surgery_validity, corner_repair_exhaustive,
                                    family_bound,             encounter_pipeline, keane_bounds};
  bool all = true;
  for (int id = 1; id <= 8; ++id) {
    if (only != 0 && only != id) continue;
    Result r;
    if (id == 8) {
      if (cli.empty()) {
        r = Result{8, "reproducibility", false, "no --cli given", 0.0};
      } else {
        r = reproducibility(cli, scratch, level);
      }
    } else {
      r = table[id - 1](level);
    }
    all = all && r.passed;
    std::printf("%s\n", format(r).c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
