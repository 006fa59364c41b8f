#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ot12/census.hpp"
#include "ot12/exact.hpp"
#include "ot12/partition.hpp"
#include "ot12/sampler.hpp"
#include "ot12/surgery.hpp"

namespace ot12::checks {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<std::size_t> box_indices(const Geometry& g, const BoxSpec& b) {
  std::vector<std::size_t> out;
  for (const VertexId& v : box_vertices(b)) out.push_back(g.vertex_index(g.wrap(v)));
  std::sort(out.begin(), out.end());
  return out;
}

bool all_code(const Configuration& cfg, const std::vector<std::size_t>& vs, LocalCode code) {
  return std::all_of(vs.begin(), vs.end(), [&](std::size_t v) { return cfg.local_code(v) == code; });
}

// Degree 1 or 2 everywhere, counted from edge endpoints rather than codes.
bool valid_by_degrees(const Configuration& cfg) {
  const Geometry& g = cfg.geometry();
  std::vector<int> deg(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!cfg.present(e)) continue;
    const auto ends = g.endpoints(e);
    ++deg[ends[0]];
    ++deg[ends[1]];
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (EdgeKind k : kAllKinds) {
      if (g.incident_edge(v, k) == kExterior && cfg.present_at(v, k)) ++deg[v];
    }
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1 || d == 2; });
}

GeometryPtr fixed_window_with_configs(int w, int h) {
  const Geometry probe = Geometry::window(w, h);
  for (std::uint64_t seed = 1;; ++seed) {
    Rng rng(seed);
    std::vector<bool> stubs(probe.stub_count());
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = rng.below(2) == 1;
    auto g = std::make_shared<const Geometry>(Geometry::window(w, h, WindowBoundary::fixed_boundary(stubs)));
    if (!oracle::valid_masks(*g).empty()) return g;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Result enumeration_oracle(Level) {
  const auto t0 = Clock::now();
  Result r{1, "enumeration oracle", true, {}, 0.0};
  const std::vector<std::pair<std::string, GeometryPtr>> cases = {
      {"torus L=2", make_torus(2)},
      {"window 2x2 free", std::make_shared<const Geometry>(Geometry::window(2, 2))},
      {"window 2x3 free", std::make_shared<const Geometry>(Geometry::window(2, 3))},
      {"window 3x2 fixed", fixed_window_with_configs(3, 2)},
  };
  const Weights w2 = Weights::make(2.0, 1.0, 0.5);
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [name, g] : cases) {
    const auto masks = oracle::valid_masks(*g);
    std::vector<std::uint64_t> listed;
    enumerate_valid(g, [&](const Configuration& c) { listed.push_back(c.low_word()); });
    std::sort(listed.begin(), listed.end());
    const PartitionFunction z1 = partition_function(g, Weights{});
    const PartitionFunction z2 = partition_function(g, w2);
    const double o2 = oracle::partition_function(*g, w2);
    const double rel = std::abs(z2.z - o2) / o2;
    worst = std::max(worst, rel);
    const bool ok = listed == masks && count_valid(g) == masks.size() && z1.count == masks.size() &&
                    z1.z == static_cast<double>(masks.size()) && rel < 1e-12;
    r.passed = r.passed && ok;
    detail << name << " (" << g->edge_count() << " edges): " << masks.size() << (ok ? "" : " MISMATCH") << "; ";
  }
  r.seconds = since(t0);
  r.passed = r.passed && r.seconds < 10.0;
  detail << "max rel err at (2,1,0.5) " << num(worst, 3);
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct TvOutcome {
  double tv = 0.0;
  std::size_t support = 0;
  std::size_t visited = 0;
};

TvOutcome sampler_tv(const Weights& w, std::size_t n, std::uint64_t seed) {
  const GeometryPtr g = make_torus(2);
  const Distribution exact = exact_distribution(g, w);
  std::unordered_map<std::uint64_t, double> prob;
  const Configuration empty(g);
  for (std::size_t i = 0; i < exact.patches.size(); ++i) prob[exact.apply(empty, i).low_word()] = exact.probabilities[i];
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  RunParams p;
  p.seed = seed;
  p.burn_in = 1000;
  p.n_samples = n;
  p.thinning = 1;
  run(g, w, p, [&](std::size_t, const Configuration& c) { ++counts[c.low_word()]; });
  TvOutcome out;
  out.support = prob.size();
  out.visited = counts.size();
  double sum = 0.0;
  for (const auto& [key, pr] : prob) {
    const auto it = counts.find(key);
    const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
    sum += std::abs(emp - pr);
  }
  for (const auto& [key, c] : counts) {
    if (!prob.count(key)) sum += static_cast<double>(c) / static_cast<double>(n);
  }
  out.tv = 0.5 * sum;
  return out;
}

}  // namespace

Result sampler_oracle(Level level) {
  const auto t0 = Clock::now();
  Result r{2, "sampler vs exact", true, {}, 0.0};
  const bool full = level == Level::Full;
  const std::size_t n = full ? 1000000 : 100000;
  const double tv_limit = full ? 0.02 : 0.05;
  std::ostringstream detail;

  const std::vector<std::pair<std::string, Weights>> weights = {{"(1,1,1)", Weights{}},
                                                                {"(2,1,0.5)", Weights::make(2, 1, 0.5)}};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const TvOutcome o = sampler_tv(weights[i].second, n, 11 + i);
    const bool ok = o.tv < tv_limit && (!full || o.visited == o.support);
    r.passed = r.passed && ok;
    detail << "L=2 " << weights[i].first << " TV " << num(o.tv, 3) << " (" << o.visited << "/" << o.support
           << " states); ";
  }

  // Per-kind edge marginals on L=3 at (2,1,0.5), batch-means standard errors.
  // Complementing a configuration preserves validity and weight, so every
  // edge marginal is 1/2; the {001} vertex density is added as a statistic
  // that does depend on the weights.
  const GeometryPtr g3 = make_torus(3);
  const Weights w = Weights::make(2, 1, 0.5);
  const Distribution exact = exact_distribution(g3, w);
  const auto nv = static_cast<double>(g3->vertex_count());
  std::array<double, 4> truth{};
  std::array<double, 4> per_stat{0.0, 0.0, 0.0, nv};
  for (std::size_t e = 0; e < g3->edge_count(); ++e) per_stat[static_cast<std::size_t>(g3->edge_kind(e))] += 1.0;
  auto tally = [&](const Configuration& c, std::array<double, 4>& acc, double weight) {
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      if (c.present(e)) acc[static_cast<std::size_t>(g3->edge_kind(e))] += weight;
    }
    for (std::size_t v = 0; v < g3->vertex_count(); ++v) {
      if (c.local_code(v) == kCode001) acc[3] += weight;
    }
  };
  const Configuration empty3(g3);
  for (std::size_t i = 0; i < exact.patches.size(); ++i) tally(exact.apply(empty3, i), truth, exact.probabilities[i]);
  for (std::size_t k = 0; k < 4; ++k) truth[k] /= per_stat[k];

  const std::size_t m = full ? 200000 : 20000;
  const std::size_t batches = 50;
  std::vector<std::array<double, 4>> batch(batches, std::array<double, 4>{});
  RunParams p;
  p.seed = 23;
  p.burn_in = 1000;
  p.n_samples = m;
  p.thinning = 1;
  run(g3, w, p, [&](std::size_t idx, const Configuration& c) { tally(c, batch[idx * batches / m], 1.0); });
  const char* names[] = {"a-edge", "b-edge", "c-edge", "{001}"};
  for (std::size_t k = 0; k < 4; ++k) {
    double mean = 0.0;
    std::vector<double> xs;
    for (const auto& b : batch) xs.push_back(b[k] / (per_stat[k] * static_cast<double>(m / batches)));
    for (double x : xs) mean += x;
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(batches - 1);
    const double se = std::sqrt(var / static_cast<double>(batches));
    const double z = std::abs(mean - truth[k]) / se;
    r.passed = r.passed && z < 3.0;
    detail << "L=3 P(" << names[k] << ") " << num(mean, 5) << " vs " << num(truth[k], 5) << " (" << num(z, 2)
           << " SE); ";
  }
  r.seconds = since(t0);
  r.passed = r.passed && r.seconds < 300.0;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------

Result surgery_validity(Level level) {
  const auto t0 = Clock::now();
  Result r{3, "rewire surgery validity", true, {}, 0.0};
  const bool full = level == Level::Full;
  const int L = full ? 32 : 16;
  const int N = 3;
  const std::size_t total = full ? 10000 : 300;
  const GeometryPtr g = make_torus(L);
  std::size_t failures = 0;
  std::size_t trials = 0;
  std::size_t max_modified = 0;
  std::string first_failure;
  auto fail = [&](const std::string& why) {
    if (failures++ == 0) first_failure = why;
  };

  const std::vector<Weights> weights = {Weights{}, Weights::make(2, 1, 0.5)};
  for (std::size_t wi = 0; wi < weights.size(); ++wi) {
    Rng centres(1000 + wi);
    RunParams p;
    p.seed = 31 + wi;
    p.burn_in = 200;
    p.n_samples = total / weights.size();
    p.thinning = 1;
    p.block_radius = 1;
    p.flips_per_sweep = g->edge_count();
    run(g, weights[wi], p, [&](std::size_t, const Configuration& cfg) {
      ++trials;
      const int cx = static_cast<int>(centres.below(static_cast<std::size_t>(L)));
      const int cy = static_cast<int>(centres.below(static_cast<std::size_t>(L)));
      SurgeryReport rep{cfg, cfg, {}, {}, 0, 0.0, 0.0};
      try {
        rep = rewire_box_interior(cfg, N, cx, cy, weights[wi]);
      } catch (const SurgeryFailure& e) {
        fail(e.what());
        return;
      }
      const Configuration& out = rep.output;
      if (!valid_by_degrees(out)) return fail("invalid output");
      if (!all_code(out, box_indices(*g, {N, cx, cy}), kCode001)) return fail("B_N not all {001}");
      max_modified = std::max(max_modified, rep.modified_vertices.size());
      if (rep.modified_vertices.size() > surgery_bound(N)) return fail("too many modified vertices");
      std::vector<char> region(g->vertex_count(), 0);
      for (std::size_t v : box_indices(*g, {N + 2, cx, cy})) region[v] = 1;
      const CornerHexagons hex = corner_hexagons({N + 2, cx, cy}, *g);
      for (std::size_t v : hex.h1) region[v] = 1;
      for (std::size_t v : hex.h2) region[v] = 1;
      for (std::size_t v = 0; v < g->vertex_count(); ++v) {
        if (region[v]) continue;
        if (cfg.local_code(v) == kCode001 && out.local_code(v) != kCode001) return fail("{001} lost outside region");
        if (cfg.local_code(v) != out.local_code(v)) return fail("code changed outside region");
      }
      for (std::size_t e = 0; e < g->edge_count(); ++e) {
        const auto ends = g->endpoints(e);
        if (!region[ends[0]] && !region[ends[1]] && cfg.present(e) != out.present(e)) {
          return fail("edge changed outside region");
        }
      }
    });
  }
  r.seconds = since(t0);
  r.passed = failures == 0 && trials == total && r.seconds < 120.0;
  r.detail = std::to_string(trials) + " configurations on L=" + std::to_string(L) + ", N=3; failures " +
             std::to_string(failures) + "; max |modified| " + std::to_string(max_modified) + " <= " +
             std::to_string(surgery_bound(N)) + (first_failure.empty() ? "" : "; first: " + first_failure);
  return r;
}

// ---------------------------------------------------------------------------

Result corner_repair_exhaustive(Level) {
  const auto t0 = Clock::now();
  Result r{4, "corner repair exhaustive", true, {}, 0.0};
  const GeometryPtr g = make_torus(10);
  const CornerHexagons hex = corner_hexagons({5, 5, 5}, *g);
  std::size_t cases = 0;
  std::size_t failures = 0;
  for (const auto& h : {hex.h1, hex.h2}) {
    const auto sides = hexagon_sides(*g, h);
    std::array<std::size_t, 6> outward{};
    for (std::size_t i = 0; i < 6; ++i) {
      for (EdgeKind k : kAllKinds) {
        const auto e = static_cast<std::size_t>(g->incident_edge(h[i], k));
        if (e != sides[i] && e != sides[(i + 5) % 6]) outward[i] = e;
      }
    }
    for (std::uint32_t mask = 0; mask < 4096; ++mask) {
      Configuration cfg(g);
      for (std::size_t i = 0; i < 6; ++i) {
        cfg.set(sides[i], (mask >> i) & 1U);
        cfg.set(outward[i], (mask >> (6 + i)) & 1U);
      }
      if (cfg.degree(h[0]) != 3) continue;
      bool others_valid = true;
      for (std::size_t i = 1; i < 6; ++i) others_valid = others_valid && cfg.degree(h[i]) >= 1 && cfg.degree(h[i]) <= 2;
      if (!others_valid) continue;
      ++cases;
      Configuration out = cfg;
      corner_repair(out, h);
      bool ok = true;
      for (std::size_t v : h) ok = ok && out.degree(v) >= 1 && out.degree(v) <= 2;
      for (std::size_t e : outward) ok = ok && out.present(e) == cfg.present(e);
      failures += ok ? 0 : 1;
    }
  }
  r.seconds = since(t0);
  r.passed = cases > 0 && failures == 0 && r.seconds < 10.0;
  r.detail = std::to_string(cases) + " cases over both corners, failures " + std::to_string(failures);
  return r;
}

// ---------------------------------------------------------------------------

Result family_bound(Level) {
  const auto t0 = Clock::now();
  Result r{5, "compatible partition families", true, {}, 0.0};
  std::ostringstream detail;
  for (std::size_t k = 3; k <= 7; ++k) {
    const auto parts = all_partitions(k);
    bool ok = parts.size() == oracle::partitions_by_labelling(k).size();
    if (k <= 5) {
      for (const auto& p : parts) {
        for (const auto& q : parts) ok = ok && is_compatible(p, q) == oracle::compatible_by_orderings(p, q);
      }
    }
    const CompatibleFamily f = max_compatible_family(k);
    ok = ok && f.size <= k - 2 && f.witness.size() == f.size;
    for (std::size_t i = 0; i < f.witness.size(); ++i) {
      for (std::size_t j = i + 1; j < f.witness.size(); ++j) {
        ok = ok && oracle::compatible_by_orderings(f.witness[i], f.witness[j]);
      }
    }
    if (k <= 5) ok = ok && oracle::max_family_exhaustive(k) == f.size;
    const auto nested = nested_family(k);
    ok = ok && nested.size() == k - 2;
    for (std::size_t i = 0; i < nested.size(); ++i) {
      for (std::size_t j = i + 1; j < nested.size(); ++j) {
        ok = ok && oracle::compatible_by_orderings(nested[i], nested[j]) && is_compatible(nested[i], nested[j]);
      }
    }
    r.passed = r.passed && ok;
    detail << "k=" << k << ": " << parts.size() << " partitions, max family " << f.size << (ok ? "" : " FAIL")
           << "; ";
  }
  r.seconds = since(t0);
  r.passed = r.passed && r.seconds < 60.0;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Premise {
  bool holds = false;
  std::vector<std::vector<std::size_t>> components;  // sorted by smallest vertex
};

// Whether the exterior neighbours of u1..u3 are {001} in `out` and lie in
// three distinct rim-reaching {001} components of region \ B_{N+2}.
Premise encounter_premise(const Configuration& out, const BoxSpec& outer, const std::array<std::size_t, 3>& u,
                          const Region& region) {
  const Geometry& g = out.geometry();
  std::vector<bool> member(g.vertex_count(), false);
  for (std::size_t v : region.vertices()) member[v] = true;
  for (std::size_t v : box_indices(g, outer)) member[v] = false;
  const auto comps = oracle::bfs_clusters(out, kCode001, member);
  std::vector<std::int64_t> comp_of(g.vertex_count(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = static_cast<std::int64_t>(c);
  }
  Premise p;
  std::vector<std::int64_t> chosen;
  for (std::size_t ui : u) {
    if (out.local_code(ui) != kCode001) return p;
    std::int64_t found = -1;
    for (EdgeKind k : kAllKinds) {
      const auto x = static_cast<std::size_t>(g.neighbor(ui, k));
      if (member[x] && comp_of[x] >= 0) found = comp_of[x];
    }
    if (found < 0) return p;
    const auto& comp = comps[static_cast<std::size_t>(found)];
    if (std::none_of(comp.begin(), comp.end(), [&](std::size_t v) { return region.rim(v); })) return p;
    chosen.push_back(found);
  }
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) return p;
  p.holds = true;
  for (auto c : chosen) p.components.push_back(comps[static_cast<std::size_t>(c)]);
  return p;
}

bool hand_built_encounters(std::string& note) {
  const GeometryPtr g = make_torus(16);
  const Region region = Region::box(*g, {11, 8, 8});
  const Configuration cfg = fixtures::three_arm(g, 8, 8);
  if (!is_valid(cfg)) {
    note = "three-arm fixture invalid";
    return false;
  }
  const EncounterResult yes = is_encounter_box(cfg, {1, 8, 8}, kCode001, region);
  std::vector<bool> member(g->vertex_count(), false);
  for (std::size_t v : region.vertices()) member[v] = true;
  for (std::size_t v : box_indices(*g, {3, 8, 8})) member[v] = false;
  auto expected = oracle::bfs_clusters(cfg, kCode001, member);
  auto got = yes.components;
  std::sort(got.begin(), got.end());
  const bool positive = yes.encounter && expected.size() == 3 && got == expected &&
                        std::all_of(yes.component_reaches_rim.begin(), yes.component_reaches_rim.end(),
                                    [](bool b) { return b; });

  Configuration two_arm = fixtures::ab_background(g);
  fixtures::cut_column(two_arm, 8);
  const bool negative_two = !is_encounter_box(two_arm, {1, 8, 8}, kCode001, region).encounter;
  const bool negative_flat = !is_encounter_box(all_horizontal(g), {1, 8, 8}, kCode001, region).encounter;
  // A fourth, finite piece hanging off the cluster outside B_3.
  Configuration spur = cfg;
  fixtures::cut_b(spur, 7, 9);
  fixtures::cut_b(spur, 6, 10);
  const bool negative_spur = !is_encounter_box(spur, {1, 8, 8}, kCode001, region).encounter;
  note = std::string("hand-built: three-arm ") + (positive ? "yes" : "NO") + ", two-arm " +
         (negative_two ? "no" : "YES") + ", flat " + (negative_flat ? "no" : "YES") + ", spur " +
         (negative_spur ? "no" : "YES");
  return positive && negative_two && negative_flat && negative_spur;
}

}  // namespace

Result encounter_pipeline(Level level) {
  const auto t0 = Clock::now();
  Result r{6, "encounter-box pipeline", true, {}, 0.0};
  std::string note;
  const bool hand = hand_built_encounters(note);

  // Admissible tridents are rare for any single centre, so every centre of
  // each sample is tried; a trial is one (sample, centre) pair that admits a
  // trident.
  const bool full = level == Level::Full;
  const std::size_t trials = full ? 1000 : 100;
  const std::size_t max_samples = 20 * trials;
  const int L = 24;
  const int N = 3;
  const int region_side = N + 2 + 2;
  const GeometryPtr g = make_torus(L);
  const Weights w = Weights::make(3, 1, 1);
  std::size_t samples = 0;
  std::size_t attempts = 0;
  std::size_t admissible = 0;
  std::size_t built = 0;
  std::size_t rejected = 0;
  std::size_t rejected_without_witness = 0;
  std::size_t checklist_failures = 0;
  std::size_t bound_failures = 0;
  std::size_t premise = 0;
  std::size_t premise_failures = 0;

  ChainState chain = init_chain(g, w, 41);
  for (int i = 0; i < 200; ++i) heat_bath_sweep(chain);
  while (admissible < trials && samples < max_samples) {
    heat_bath_sweep(chain);
    ++samples;
    const Configuration& cfg = chain.config;
    for (int cy = 0; cy < L && admissible < trials; ++cy) {
      for (int cx = 0; cx < L && admissible < trials; ++cx) {
        ++attempts;
        const Region region = Region::box(*g, {region_side, cx, cy});
        Trident t;
        try {
          t = select_trident(cfg, N, cx, cy, kCode001, region);
        } catch (const InsufficientClusters&) {
          continue;
        }
        ++admissible;
        SurgeryReport rep{cfg, cfg, {}, {}, 0, 0.0, 0.0};
        try {
          rep = build_encounter_box(cfg, N, cx, cy, t.u, w);
        } catch (const SurgeryFailure& e) {
          ++rejected;
          if (e.vertex() >= g->vertex_count()) ++rejected_without_witness;
          continue;
        }
        ++built;
        const Configuration& out = rep.output;
        const EncounterChecklist c = check_encounter_construction(out, N, cx, cy, t.u);
        if (!c.passed() || !valid_by_degrees(out) || !all_code(out, box_indices(*g, {N, cx, cy}), kCode001)) {
          ++checklist_failures;
        }
        if (rep.modified_vertices.size() > surgery_bound(N)) ++bound_failures;
        const Premise pr = encounter_premise(out, {N + 2, cx, cy}, t.u, region);
        if (pr.holds) {
          ++premise;
          const EncounterResult e = is_encounter_box(out, {N, cx, cy}, kCode001, region);
          auto got = e.components;
          std::sort(got.begin(), got.end());
          if (!e.encounter || got != pr.components) ++premise_failures;
        }
      }
    }
  }

  r.seconds = since(t0);
  r.passed = hand && admissible == trials && checklist_failures == 0 && bound_failures == 0 && rejected_without_witness == 0 &&
             premise_failures == 0 && r.seconds < 300.0;
  r.detail = note + "; " + std::to_string(admissible) + " admissible trials (" + std::to_string(attempts) +
             " centres over " + std::to_string(samples) + " samples, L=24, N=3, (3,1,1)): " +
             std::to_string(built) + " built, " + std::to_string(rejected) +
             " rejected (" + std::to_string(rejected_without_witness) + " without witness), checklist failures " +
             std::to_string(checklist_failures) + ", encounter confirmed " +
             std::to_string(premise - premise_failures) + "/" + std::to_string(premise);
  return r;
}

// ---------------------------------------------------------------------------

Result keane_bounds(Level level) {
  const auto t0 = Clock::now();
  Result r{7, "Keane census bounds", true, {}, 0.0};
  const bool full = level == Level::Full;
  const int L = full ? 64 : 32;
  const std::size_t n = full ? 1000 : 50;
  const GeometryPtr g = make_torus(L);
  const TilingSpec spec{4, 1, L / 2, L / 2};
  const Weights w{};
  KeaneCensus census(spec, kCode001, w);
  const Region region = Region::box_with_rim(*g, spec.window());
  std::size_t oracle_mismatch = 0;

  const KeaneSample flat = keane_sample(all_horizontal(g), spec, kCode001);
  RunParams p;
  p.seed = 53;
  p.burn_in = 200;
  p.n_samples = n;
  p.thinning = 2;
  run(g, w, p, [&](std::size_t, const Configuration& cfg) {
    census.add(cfg);
    const KeaneSample& s = census.report().series.back();
    // Independent Y cap from the BFS oracle.
    std::vector<bool> member(g->vertex_count(), false);
    for (std::size_t v : region.vertices()) member[v] = true;
    std::size_t cap = 0;
    for (const auto& comp : oracle::bfs_clusters(cfg, kCode001, member)) {
      std::size_t y = 0;
      for (std::size_t v : comp) y += region.rim(v) ? 1 : 0;
      if (y >= 3) cap += y - 2;
    }
    if (cap != s.y_cap || s.encounter_boxes > cap) ++oracle_mismatch;
    if (s.encounter_boxes == 0) return;
    const ClusterLabels labels = label_clusters(cfg, kCode001, region);
    for (const auto& f : s.families) {
      const auto fam = partitions_from_encounter_boxes(cfg, labels, f.cluster, spec.inner_boxes(), region);
      for (std::size_t i = 0; i < fam.partitions.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.partitions.size(); ++j) {
          if (!oracle::compatible_by_orderings(fam.partitions[i].partition, fam.partitions[j].partition)) {
            ++oracle_mismatch;
          }
        }
      }
      if (fam.partitions.size() + 2 > f.y_size) ++oracle_mismatch;
    }
  });
  // Positive control: the three-arm configuration has exactly one box.
  const KeaneSample arms = keane_sample(fixtures::three_arm(make_torus(16), 8, 8), {3, 1, 8, 8}, kCode001);
  const bool arms_ok = arms.encounter_boxes == 1 && arms.families.size() == 1 && arms.ok;

  const KeaneReport& rep = census.report();
  r.seconds = since(t0);
  r.passed = flat.encounter_boxes == 0 && arms_ok && rep.samples == n && rep.violations == 0 && rep.incompatible_families == 0 &&
             rep.oversize_families == 0 && rep.cap_exceeded == 0 && oracle_mismatch == 0 && r.seconds < 600.0;
  r.detail = std::to_string(rep.samples) + " samples on L=" + std::to_string(L) + ", s=4, N=1: encounter boxes mean " +
             num(rep.mean_encounter_boxes(), 3) + " max " + std::to_string(rep.max_encounter_boxes) +
             "; violations " + std::to_string(rep.violations) + ", oracle mismatches " +
             std::to_string(oracle_mismatch) + "; |outer boundary| " + std::to_string(rep.outer_boundary_size) +
             " vs 4s(N+4) = " + std::to_string(rep.perimeter_formula) +
             "; three-arm control " + (arms_ok ? "1 box, family ok" : "FAILED");
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  if (!std::filesystem::exists(root)) return out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    out[std::filesystem::relative(entry.path(), root).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return out;
}

}  // namespace

Result reproducibility(const std::string& cli, const std::string& scratch_dir, Level level) {
  const auto t0 = Clock::now();
  Result r{8, "reproducibility", true, {}, 0.0};
  namespace fs = std::filesystem;
  const fs::path base =
      fs::absolute(scratch_dir.empty() ? fs::temp_directory_path() / "ot12-repro" : fs::path(scratch_dir));
  const std::string exe = fs::absolute(cli).string();
  fs::remove_all(base);
  const bool full = level == Level::Full;
  const std::string samples = full ? "20" : "5";
  std::vector<std::map<std::string, std::string>> runs;
  std::string failed;
  for (const char* tag : {"run1", "run2"}) {
    const fs::path dir = base / tag;
    // Same relative paths in both runs, so the echoed configs match too.
    const std::vector<std::string> commands = {
        "sample --L 8 --a 2 --b 1 --c 0.5 --seed 99 --sweeps " + samples + " --burn-in 50 --thin 2 --out sample",
        "census --in sample --out census --svg",
        "keane --L 24 --s 2 --N 1 --code 1 --seed 99 --sweeps " + samples + " --burn-in 20 --thin 1 --out keane",
    };
    fs::create_directories(dir);
    for (const auto& c : commands) {
      const std::string line = "cd \"" + dir.string() + "\" && \"" + exe + "\" " + c + " >> \"" +
                               (base / (std::string(tag) + ".log")).string() + "\" 2>&1";
      if (std::system(line.c_str()) != 0) failed = c;
    }
    runs.push_back(snapshot(dir));
  }
  std::size_t differing = 0;
  for (const auto& [name, bytes] : runs[0]) {
    const auto it = runs[1].find(name);
    if (it == runs[1].end() || it->second != bytes) ++differing;
  }
  // Control: another seed must change the samples, or the comparison is blind.
  const fs::path other = base / "seed100";
  fs::create_directories(other);
  const std::string control = "cd \"" + other.string() + "\" && \"" + exe +
                              "\" sample --L 8 --a 2 --b 1 --c 0.5 --seed 100 --sweeps " + samples +
                              " --burn-in 50 --thin 2 --out sample > /dev/null 2>&1";
  if (std::system(control.c_str()) != 0) failed = "control sample";
  const auto alt = snapshot(other);
  const auto a = runs[0].find("sample/sample_000000.ot12");
  const auto b = alt.find("sample/sample_000000.ot12");
  const bool control_differs = a != runs[0].end() && b != alt.end() && a->second != b->second;

  r.seconds = since(t0);
  r.passed = failed.empty() && !runs[0].empty() && runs[0].size() == runs[1].size() && differing == 0 &&
             control_differs;
  r.detail = std::to_string(runs[0].size()) + " files per run, " + std::to_string(differing) + " differ; seed 100 " +
             (control_differs ? "differs" : "DOES NOT differ") + (failed.empty() ? "" : "; command failed: " + failed);
  return r;
}

std::vector<Result> run_all(Level level, const std::string& cli, const std::string& scratch_dir) {
  std::vector<Result> out;
  out.push_back(enumeration_oracle(level));
  out.push_back(sampler_oracle(level));
  out.push_back(surgery_validity(level));
  out.push_back(corner_repair_exhaustive(level));
  out.push_back(family_bound(level));
  out.push_back(encounter_pipeline(level));
  out.push_back(keane_bounds(level));
  if (!cli.empty()) out.push_back(reproducibility(cli, scratch_dir, level));
  return out;
}

std::string format(const Result& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + " (" + secs +
         "): " + r.detail;
}

}  // namespace ot12::checks
