// ot12: command-line front end for the 1-2 model library.
//
// Every subcommand writes into an output directory (--out, else
// $OT12_OUT_ROOT/<subcommand>, else ot12-out/<subcommand>) containing its
// results, config.ini (the effective options, loadable with --config) and
// manifest.json. Exit codes: 0 success, 1 failed check or surgery, 2 usage.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checks.hpp"
#include "json.hpp"
#include "ot12/census.hpp"
#include "ot12/configuration.hpp"
#include "ot12/exact.hpp"
#include "ot12/partition.hpp"
#include "ot12/render.hpp"
#include "ot12/sampler.hpp"
#include "ot12/surgery.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ot12;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSuiteVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightOpts {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  Weights get() const { return Weights::make(a, b, c); }
};

void add_weights(CLI::App* app, WeightOpts& w) {
  app->add_option("--a", w.a, "weight of {001} and {110}")->capture_default_str();
  app->add_option("--b", w.b, "weight of {010} and {101}")->capture_default_str();
  app->add_option("--c", w.c, "weight of {100} and {011}")->capture_default_str();
}

struct ChainOpts {
  int L = 16;
  std::uint64_t seed = 1;
  std::size_t sweeps = 100;
  std::size_t burn_in = 1000;
  std::size_t thin = 10;
  int block_radius = 2;
  std::size_t flips = 0;

  RunParams params() const {
    RunParams p;
    p.seed = seed;
    p.burn_in = burn_in;
    p.n_samples = sweeps;
    p.thinning = thin;
    p.block_radius = block_radius;
    p.flips_per_sweep = flips;
    return p;
  }
};

void add_chain(CLI::App* app, ChainOpts& c) {
  app->add_option("--L", c.L, "torus side")->capture_default_str()->check(CLI::Range(2, 4096));
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--sweeps", c.sweeps, "number of kept samples")->capture_default_str();
  app->add_option("--burn-in", c.burn_in, "sweeps discarded first")->capture_default_str();
  app->add_option("--thin", c.thin, "sweeps between kept samples")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--block-radius", c.block_radius, "heat-bath block radius")->capture_default_str()->check(
      CLI::Range(1, 4));
  app->add_option("--flips", c.flips, "Metropolis edge flips after each sweep")->capture_default_str();
}

std::pair<int, int> parse_pair(const std::string& s, const char* what) {
  int x = 0;
  int y = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> x >> comma >> y) || comma != ',' || !is.eof()) throw UsageError(std::string(what) + " must be x,y");
  return {x, y};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Output {
 public:
  Output(const std::string& out, const std::string& sub) {
    if (!out.empty()) {
      dir_ = out;
    } else if (const char* root = std::getenv("OT12_OUT_ROOT"); root && *root) {
      dir_ = fs::path(root) / sub;
    } else {
      dir_ = fs::path("ot12-out") / sub;
    }
    fs::create_directories(dir_);
  }

  const fs::path& dir() const { return dir_; }

  void write(const std::string& name, const std::string& content) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
    os << content;
    files_.push_back(name);
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void finish(const CLI::App& app, const std::string& sub, std::uint64_t seed) {
    const std::string echo = "[" + sub + "]\n" + app.get_subcommand(sub)->config_to_str(true, false);
    write("config.ini", echo);
    std::sort(files_.begin(), files_.end());
    json m;
    m["tool"] = "ot12";
    m["version"] = kVersion;
    m["suite_version"] = kSuiteVersion;
    m["subcommand"] = sub;
    m["seed"] = seed;
    // Hash the parameters, not where the results went.
    std::string params;
    std::istringstream lines(echo);
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind("out=", 0) != 0) params += line + "\n";
    }
    m["config_hash"] = "fnv1a64:" + hex64(fnv1a(params));
    m["files"] = files_;
    std::ofstream os(dir_ / "manifest.json", std::ios::binary);
    os << m.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

json weights_json(const Weights& w) { return json{{"a", w.a}, {"b", w.b}, {"c", w.c}}; }

json stats_json(const ChainStats& s) {
  return json{{"block_updates", s.block_updates},
              {"block_changes", s.block_changes},
              {"mean_block_support", s.block_updates ? static_cast<double>(s.block_support_total) /
                                                           static_cast<double>(s.block_updates)
                                                     : 0.0},
              {"flip_proposals", s.flip_proposals},
              {"flip_rejected_invalid", s.flip_rejected_invalid},
              {"flip_accepted", s.flip_accepted}};
}

std::string sample_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sample_%06zu", k);
  return buf;
}

// Configuration files named by --in: files as given, directories expanded to
// their *.ot12 entries in name order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& in) {
  std::vector<fs::path> out;
  for (const auto& s : in) {
    const fs::path p(s);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".ot12") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

Region make_region(const Geometry& g, int box, const std::string& center) {
  if (box == 0) return Region::whole(g);
  int cx = g.width() / 2;
  int cy = g.height() / 2;
  if (!center.empty()) std::tie(cx, cy) = parse_pair(center, "--center");
  return Region::box(g, {box, cx, cy});
}

LocalCode parse_code(int c) {
  if (c < 1 || c > 6) throw UsageError("--code must be in 1..6");
  return LocalCode{static_cast<std::uint8_t>(c)};
}

Adjacency parse_adjacency(const std::string& s) {
  if (s == "lattice") return Adjacency::Lattice;
  if (s == "present-only") return Adjacency::PresentOnly;
  throw UsageError("--adjacency must be lattice or present-only");
}

json cluster_members(const Geometry& g, const std::vector<std::size_t>& vs) {
  json arr = json::array();
  for (std::size_t v : vs) arr.push_back(to_string(g.vertex_at(v)));
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ot12: exact enumeration, sampling, cluster census and surgeries for the 1-2 model"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "read options from an INI/TOML file; flags given on the command line win");
  app.require_subcommand(1);
  std::string out;

  // enumerate ---------------------------------------------------------------
  auto* en = app.add_subcommand("enumerate", "exact count and partition function of a small geometry");
  int en_L = 2;
  int en_w = 0;
  int en_h = 0;
  std::string en_boundary = "free";
  std::size_t en_max = 40;
  WeightOpts en_wt;
  en->add_option("--L", en_L, "torus side")->capture_default_str();
  en->add_option("--width", en_w, "window width (selects a window instead of a torus)");
  en->add_option("--height", en_h, "window height");
  en->add_option("--boundary", en_boundary, "window boundary: free or fixed:<hex stubs>")->capture_default_str();
  en->add_option("--max-edges", en_max, "refuse geometries with more edges")->capture_default_str();
  add_weights(en, en_wt);
  en->add_option("--out", out, "output directory");

  // sample ------------------------------------------------------------------
  auto* sa = app.add_subcommand("sample", "block heat-bath sampling on a torus");
  ChainOpts sa_chain;
  WeightOpts sa_wt;
  add_chain(sa, sa_chain);
  add_weights(sa, sa_wt);
  sa->add_option("--out", out, "output directory");

  // census ------------------------------------------------------------------
  auto* ce = app.add_subcommand("census", "homogeneous-cluster census of configuration files or a live chain");
  std::vector<std::string> ce_in;
  ChainOpts ce_chain;
  WeightOpts ce_wt;
  int ce_box = -1;
  std::string ce_center;
  std::string ce_adj = "lattice";
  bool ce_svg = false;
  ce->add_option("--in", ce_in, "configuration files or directories (omit to sample live)");
  add_chain(ce, ce_chain);
  add_weights(ce, ce_wt);
  ce->add_option("--box", ce_box, "observation box side, 0 for the whole geometry (torus default: L-2)");
  ce->add_option("--center", ce_center, "observation box centre x,y");
  ce->add_option("--adjacency", ce_adj, "lattice or present-only")->capture_default_str();
  ce->add_flag("--svg", ce_svg, "render the first configuration with clusters shaded");
  ce->add_option("--out", out, "output directory");

  // surgery -----------------------------------------------------------------
  auto* su = app.add_subcommand("surgery", "box rewiring or encounter-box construction");
  std::string su_op = "rewire";
  int su_N = 1;
  std::string su_center;
  std::string su_in;
  int su_ring = 1;
  int su_code = 1;
  WeightOpts su_wt;
  su->add_option("--op", su_op, "rewire or encounter")->capture_default_str();
  su->add_option("--N", su_N, "inner box side")->capture_default_str()->check(CLI::PositiveNumber);
  su->add_option("--center", su_center, "box centre x,y")->required();
  su->add_option("--in", su_in, "input configuration")->required();
  su->add_option("--ring", su_ring, "encounter: rim distance outside B_{N+2}")->capture_default_str();
  su->add_option("--code", su_code, "encounter: cluster code")->capture_default_str();
  add_weights(su, su_wt);
  su->add_option("--out", out, "output directory");

  // partitions --------------------------------------------------------------
  auto* pa = app.add_subcommand("partitions", "largest pairwise-compatible family of 3-partitions");
  std::size_t pa_k = 5;
  pa->add_option("--Ysize", pa_k, "ground set size, 3..7")->capture_default_str()->check(CLI::Range(3, 7));
  pa->add_option("--out", out, "output directory");

  // keane -------------------------------------------------------------------
  auto* ke = app.add_subcommand("keane", "encounter-box census over the s x s tiling");
  ChainOpts ke_chain;
  ke_chain.L = 64;
  WeightOpts ke_wt;
  int ke_s = 4;
  int ke_N = 1;
  int ke_code = 1;
  std::string ke_center;
  std::vector<std::string> ke_in;
  add_chain(ke, ke_chain);
  add_weights(ke, ke_wt);
  ke->add_option("--s", ke_s, "tiles per side")->capture_default_str()->check(CLI::PositiveNumber);
  ke->add_option("--N", ke_N, "inner box side")->capture_default_str()->check(CLI::PositiveNumber);
  ke->add_option("--code", ke_code, "cluster code")->capture_default_str();
  ke->add_option("--center", ke_center, "tiling centre x,y (default: torus centre)");
  ke->add_option("--in", ke_in, "configuration files or directories (omit to sample live)");
  ke->add_option("--out", out, "output directory");

  // render ------------------------------------------------------------------
  auto* re = app.add_subcommand("render", "SVG drawing of a configuration");
  std::string re_in;
  std::string re_file;
  int re_code = 0;
  std::string re_crop;
  std::size_t re_max = 128 * 128;
  bool re_plain = false;
  std::string re_adj = "lattice";
  re->add_option("--in", re_in, "configuration file")->required();
  re->add_option("--out", re_file, "SVG file")->required();
  re->add_option("--code", re_code, "shade only clusters of this code (0: all)")->capture_default_str();
  re->add_option("--crop", re_crop, "x0,y0,width,height in cells");
  re->add_option("--max-cells", re_max, "refuse larger drawings")->capture_default_str();
  re->add_flag("--no-shade", re_plain, "draw edges only");
  re->add_option("--adjacency", re_adj, "lattice or present-only")->capture_default_str();

  // verify ------------------------------------------------------------------
  auto* ve = app.add_subcommand("verify", "run the oracle and property suite");
  bool ve_quick = false;
  ve->add_flag("--quick", ve_quick, "reduced sample sizes");
  ve->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (en->parsed()) {
      GeometryPtr g;
      if (en_w > 0 || en_h > 0) {
        WindowBoundary bnd;
        if (en_boundary.rfind("fixed:", 0) == 0) {
          const Geometry probe = Geometry::window(en_w, en_h);
          bnd = WindowBoundary::fixed_boundary(decode_bits_hex(en_boundary.substr(6), probe.stub_count()));
        } else if (en_boundary != "free") {
          throw UsageError("--boundary must be free or fixed:<hex>");
        }
        g = std::make_shared<const Geometry>(Geometry::window(en_w, en_h, bnd));
      } else {
        g = make_torus(en_L);
      }
      const Weights w = en_wt.get();
      const PartitionFunction z = partition_function(g, w, EnumerateOptions{en_max});
      json j;
      j["geometry"] = geometry_header(*g);
      j["edges"] = g->edge_count();
      j["weights"] = weights_json(w);
      j["count"] = z.count;
      j["Z"] = z.z;
      j["logZ"] = z.log_z;
      Output o(out, "enumerate");
      o.write_json("enumerate.json", j);
      o.finish(app, "enumerate", 0);
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (sa->parsed()) {
      const GeometryPtr g = make_torus(sa_chain.L);
      const Weights w = sa_wt.get();
      Output o(out, "sample");
      std::vector<std::string> names;
      const RunDiagnostics d = run(g, w, sa_chain.params(), [&](std::size_t k, const Configuration& cfg) {
        names.push_back(sample_name(k) + ".ot12");
        o.write(names.back(), write_configuration(cfg));
      });
      json j;
      j["geometry"] = geometry_header(*g);
      j["weights"] = weights_json(w);
      j["samples"] = names.size();
      j["sweeps"] = d.sweeps;
      j["stats"] = stats_json(d.stats);
      if (d.distinct_tracked) j["distinct_visited"] = d.distinct_visited;
      double mean = 0.0;
      for (double x : d.log_weight_trace) mean += x;
      j["log_weight_mean"] = d.log_weight_trace.empty() ? 0.0 : mean / static_cast<double>(d.log_weight_trace.size());
      j["log_weight_trace"] = d.log_weight_trace;
      o.write_json("diagnostics.json", j);
      o.finish(app, "sample", sa_chain.seed);
      std::cout << "wrote " << names.size() << " samples to " << o.dir().string() << "\n";
      return 0;
    }

    if (ce->parsed()) {
      const Adjacency adj = parse_adjacency(ce_adj);
      Output o(out, "census");
      std::ostringstream csv;
      csv << "sample,source";
      for (int c = 1; c <= 6; ++c) {
        csv << ",largest_" << c << ",second_" << c << ",clusters_" << c << ",rim_clusters_" << c;
      }
      csv << "\n";
      SizeStatistics stats;
      std::size_t region_size = 0;
      std::size_t k = 0;
      auto consume = [&](const Configuration& cfg, const std::string& source) {
        const Geometry& g = cfg.geometry();
        const int box = ce_box >= 0 ? ce_box : (g.is_torus() ? g.width() - 2 : 0);
        const Region region = make_region(g, box, ce_center);
        const CensusReport rep = census_report(cfg, region, adj);
        region_size = rep.region_size;
        stats.add(rep);
        csv << k << "," << source;
        for (int c = 1; c <= 6; ++c) {
          const CodeSummary& s = rep.by_code[static_cast<std::size_t>(c)];
          csv << "," << s.largest << "," << s.second_largest << "," << s.clusters << "," << s.boundary_clusters;
        }
        csv << "\n";
        if (ce_svg && k == 0) {
          RenderOptions ro;
          ro.adjacency = adj;
          o.write("census_000000.svg", render_svg(cfg, ro));
        }
        ++k;
      };
      std::uint64_t seed = 0;
      if (!ce_in.empty()) {
        for (const fs::path& p : expand_inputs(ce_in)) consume(load_configuration(p.string()), p.filename().string());
      } else {
        seed = ce_chain.seed;
        run(make_torus(ce_chain.L), ce_wt.get(), ce_chain.params(),
            [&](std::size_t i, const Configuration& cfg) { consume(cfg, "live:" + std::to_string(i)); });
      }
      json j;
      j["samples"] = stats.samples();
      j["region_size"] = region_size;
      j["adjacency"] = ce_adj;
      json codes = json::object();
      for (int c = 1; c <= 6; ++c) {
        codes[code_digits(LocalCode{static_cast<std::uint8_t>(c)})] =
            json{{"largest_fraction", stats.largest_fraction(c)},
                 {"second_largest_fraction", stats.second_largest_fraction(c)},
                 {"second_to_largest_ratio", stats.second_to_largest_ratio(c)},
                 {"coexistence_frequency", stats.coexistence_frequency(c)}};
      }
      j["codes"] = codes;
      o.write("census.csv", csv.str());
      o.write_json("summary.json", j);
      o.finish(app, "census", seed);
      std::cout << "census of " << stats.samples() << " configurations written to " << o.dir().string() << "\n";
      return 0;
    }

    if (su->parsed()) {
      const Configuration cfg = load_configuration(su_in);
      const Geometry& g = cfg.geometry();
      const auto [cx, cy] = parse_pair(su_center, "--center");
      const Weights w = su_wt.get();
      Output o(out, "surgery");
      json j;
      j["op"] = su_op;
      j["N"] = su_N;
      j["center"] = {cx, cy};
      j["geometry"] = geometry_header(g);
      j["bound"] = surgery_bound(su_N);
      j["factor"] = probability_factor(su_N, w);
      j["log_factor"] = log_probability_factor(su_N, w);
      const int pad = 3 + (su_op == "encounter" ? su_ring : 0);
      RenderOptions ro;
      const int side = su_N + 2 + 2 * pad;
      ro.crop = CropWindow{cx - side / 2, cy - side / 2, side, side};
      if (!g.is_torus()) ro.crop.reset();
      o.write("before.svg", render_svg(cfg, ro));
      int status = 0;
      try {
        SurgeryReport rep{cfg, cfg, {}, {}, 0, 0.0, 0.0};
        if (su_op == "rewire") {
          rep = rewire_box_interior(cfg, su_N, cx, cy, w);
        } else if (su_op == "encounter") {
          const LocalCode code = parse_code(su_code);
          const Region region = Region::box(g, {su_N + 2 + 2 * su_ring, cx, cy});
          const Trident t = select_trident(cfg, su_N, cx, cy, code, region);
          j["trident"] = cluster_members(g, {t.u.begin(), t.u.end()});
          j["clusters_meeting"] = t.clusters_meeting;
          j["admissible_clusters"] = t.admissible_clusters;
          rep = build_encounter_box(cfg, su_N, cx, cy, t.u, w);
          const EncounterResult e = is_encounter_box(rep.output, {su_N, cx, cy}, code, region);
          j["encounter_box"] = e.encounter;
          j["encounter_reason"] = e.reason;
          json comps = json::array();
          for (const auto& c : e.components) comps.push_back(c.size());
          j["component_sizes"] = comps;
        } else {
          throw UsageError("--op must be rewire or encounter");
        }
        j["status"] = "ok";
        j["valid"] = is_valid(rep.output);
        j["modified_vertex_count"] = rep.modified_vertices.size();
        j["modified_edge_count"] = rep.modified_edges.size();
        j["modified_vertices"] = cluster_members(g, rep.modified_vertices);
        o.write("after.svg", render_svg(rep.output, ro));
        o.write("output.ot12", write_configuration(rep.output));
      } catch (const SurgeryFailure& e) {
        j["status"] = "failed";
        j["error"] = e.what();
        j["vertex"] = to_string(g.vertex_at(e.vertex()));
        status = 1;
      } catch (const InsufficientClusters& e) {
        j["status"] = "insufficient clusters";
        j["error"] = e.what();
        j["admissible_clusters"] = e.admissible();
        status = 1;
      }
      o.write_json("report.json", j);
      o.finish(app, "surgery", 0);
      std::cout << j["status"].get<std::string>() << ": report in " << o.dir().string() << "\n";
      return status;
    }

    if (pa->parsed()) {
      const CompatibleFamily f = max_compatible_family(pa_k);
      const auto nested = nested_family(pa_k);
      bool nested_ok = true;
      for (std::size_t i = 0; i < nested.size(); ++i) {
        for (std::size_t jx = i + 1; jx < nested.size(); ++jx) nested_ok = nested_ok && is_compatible(nested[i], nested[jx]);
      }
      auto blocks = [](const Partition3& p) {
        json b = json::array();
        for (const auto& blk : p.blocks()) b.push_back(blk);
        return b;
      };
      json j;
      j["Ysize"] = pa_k;
      j["partitions"] = all_partitions(pa_k).size();
      j["max_family"] = f.size;
      j["bound"] = pa_k - 2;
      j["within_bound"] = f.size <= pa_k - 2;
      j["search_nodes"] = f.nodes;
      json wit = json::array();
      for (const auto& p : f.witness) wit.push_back(blocks(p));
      j["witness"] = wit;
      json nest = json::array();
      for (const auto& p : nested) nest.push_back(blocks(p));
      j["nested_family"] = nest;
      j["nested_family_compatible"] = nested_ok;
      Output o(out, "partitions");
      o.write_json("partitions.json", j);
      o.finish(app, "partitions", 0);
      std::cout << j.dump() << "\n";
      return j["within_bound"].get<bool>() && nested_ok ? 0 : 1;
    }

    if (ke->parsed()) {
      const LocalCode code = parse_code(ke_code);
      const Weights w = ke_wt.get();
      Output o(out, "keane");
      std::unique_ptr<KeaneCensus> census;
      std::ostringstream csv;
      csv << "sample,encounter_boxes,y_cap,rejected_boxes,families,ok\n";
      auto consume = [&](const Configuration& cfg) {
        if (!census) {
          const Geometry& g = cfg.geometry();
          int cx = g.width() / 2;
          int cy = g.height() / 2;
          if (!ke_center.empty()) std::tie(cx, cy) = parse_pair(ke_center, "--center");
          census = std::make_unique<KeaneCensus>(TilingSpec{ke_s, ke_N, cx, cy}, code, w);
        }
        census->add(cfg);
        const KeaneSample& s = census->report().series.back();
        csv << census->report().samples - 1 << "," << s.encounter_boxes << "," << s.y_cap << "," << s.rejected << ","
            << s.families.size() << "," << (s.ok ? 1 : 0) << "\n";
      };
      std::uint64_t seed = 0;
      if (!ke_in.empty()) {
        for (const fs::path& p : expand_inputs(ke_in)) consume(load_configuration(p.string()));
      } else {
        seed = ke_chain.seed;
        run(make_torus(ke_chain.L), w, ke_chain.params(), [&](std::size_t, const Configuration& cfg) { consume(cfg); });
      }
      if (!census) throw UsageError("no configurations to analyse");
      const KeaneReport& r = census->report();
      json j;
      j["s"] = r.spec.s;
      j["N"] = r.spec.N;
      j["center"] = {r.spec.cx, r.spec.cy};
      j["code"] = code_digits(r.code);
      j["weights"] = weights_json(w);
      j["samples"] = r.samples;
      j["mean_encounter_boxes"] = r.mean_encounter_boxes();
      j["max_encounter_boxes"] = r.max_encounter_boxes;
      j["violations"] = r.violations;
      j["incompatible_families"] = r.incompatible_families;
      j["oversize_families"] = r.oversize_families;
      j["cap_exceeded"] = r.cap_exceeded;
      j["perimeter_exceeded"] = r.perimeter_exceeded;
      j["rejected_boxes"] = r.rejected_boxes;
      j["outer_boundary_size"] = r.outer_boundary_size;
      j["perimeter_formula"] = r.perimeter_formula;
      j["lower_bound"] = r.lower_bound;
      j["log_lower_bound"] = r.log_lower_bound;
      o.write_json("keane.json", j);
      o.write("keane.csv", csv.str());
      o.finish(app, "keane", seed);
      std::cout << "keane census of " << r.samples << " samples: " << r.violations << " violations\n";
      return r.violations == 0 ? 0 : 1;
    }

    if (re->parsed()) {
      const Configuration cfg = load_configuration(re_in);
      RenderOptions ro;
      ro.max_cells = re_max;
      ro.shade_clusters = !re_plain;
      ro.adjacency = parse_adjacency(re_adj);
      if (re_code != 0) ro.code = parse_code(re_code);
      if (!re_crop.empty()) {
        CropWindow c;
        char c1 = 0;
        char c2 = 0;
        char c3 = 0;
        std::istringstream is(re_crop);
        if (!(is >> c.x0 >> c1 >> c.y0 >> c2 >> c.width >> c3 >> c.height) || c1 != ',' || c2 != ',' || c3 != ',') {
          throw UsageError("--crop must be x0,y0,width,height");
        }
        ro.crop = c;
      }
      const std::string svg = render_svg(cfg, ro);
      std::ofstream os(re_file, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + re_file);
      os << svg;
      return 0;
    }

    if (ve->parsed()) {
      Output o(out, "verify");
      const auto level = ve_quick ? checks::Level::Quick : checks::Level::Full;
      const fs::path scratch = o.dir() / "scratch";
      const auto results = checks::run_all(level, fs::read_symlink("/proc/self/exe").string(), scratch.string());
      fs::remove_all(scratch);
      std::ostringstream report;
      bool ok = true;
      for (const auto& r : results) {
        report << checks::format(r) << "\n";
        ok = ok && r.passed;
      }
      o.write("verify.txt", report.str());
      o.finish(app, "verify", 0);
      std::cout << report.str();
      if (!ok) {
        std::cerr << "verification failed:\n";
        for (const auto& r : results) {
          if (!r.passed) std::cerr << "  " << checks::format(r) << "\n";
        }
      }
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
