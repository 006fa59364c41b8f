#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = OT12_TEST_SCRATCH;

int cli(const std::string& args) {
  const std::string cmd = "cd '" + kScratch.string() + "' && '" OT12_CLI_PATH "' " + args + " > cli.log 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Scratch {
  Scratch() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Scratch, "enumerate counts the L=2 torus") {
  REQUIRE(cli("enumerate --L 2 --out e") == 0);
  const auto j = nlohmann::json::parse(slurp(kScratch / "e" / "enumerate.json"));
  CHECK(j["count"] == 450);
  CHECK(j["Z"] == 450.0);
  const auto m = nlohmann::json::parse(slurp(kScratch / "e" / "manifest.json"));
  CHECK(m["subcommand"] == "enumerate");
  CHECK(m["files"] == nlohmann::json::array({"config.ini", "enumerate.json"}));
}

TEST_CASE_FIXTURE(Scratch, "usage errors exit with status 2") {
  CHECK(cli("enumerate --bogus") == 2);
  CHECK(cli("sample --L 1") == 2);
  CHECK(cli("sample --a 0 --out x") == 2);
  CHECK(cli("nosuchcommand") == 2);
}

TEST_CASE_FIXTURE(Scratch, "sample, render and census pipeline") {
  REQUIRE(cli("sample --L 8 --sweeps 3 --burn-in 10 --thin 2 --seed 4 --out s") == 0);
  CHECK(fs::exists(kScratch / "s" / "sample_000002.ot12"));
  REQUIRE(cli("render --in s/sample_000000.ot12 --out pic.svg") == 0);
  CHECK(slurp(kScratch / "pic.svg").find("<svg") != std::string::npos);
  REQUIRE(cli("census --in s --box 6 --out c") == 0);
  const std::string csv = slurp(kScratch / "c" / "census.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(cli("render --in missing.ot12 --out x.svg") != 0);
}

TEST_CASE_FIXTURE(Scratch, "a run can be repeated from its config echo") {
  REQUIRE(cli("sample --L 6 --sweeps 2 --burn-in 5 --thin 1 --seed 9 --out a") == 0);
  REQUIRE(cli("--config a/config.ini sample --out b") == 0);
  for (const char* f : {"sample_000000.ot12", "sample_000001.ot12", "diagnostics.json", "manifest.json"}) {
    CHECK(slurp(kScratch / "a" / f) == slurp(kScratch / "b" / f));
  }
}

TEST_CASE_FIXTURE(Scratch, "partitions and surgery") {
  REQUIRE(cli("partitions --Ysize 5 --out p") == 0);
  const auto j = nlohmann::json::parse(slurp(kScratch / "p" / "partitions.json"));
  CHECK(j["max_family"] == 3);
  CHECK(j["within_bound"] == true);
  REQUIRE(cli("sample --L 12 --sweeps 1 --burn-in 5 --thin 1 --out s") == 0);
  REQUIRE(cli("surgery --in s/sample_000000.ot12 --N 3 --center 6,6 --out r") == 0);
  const auto r = nlohmann::json::parse(slurp(kScratch / "r" / "report.json"));
  REQUIRE(r.contains("modified_vertices"));
  CHECK(r["modified_vertices"].size() <= 60);
  CHECK(r["valid"] == true);
  CHECK(cli("surgery --in s/sample_000000.ot12 --N 9 --center 6,6 --out r2") == 2);
}
