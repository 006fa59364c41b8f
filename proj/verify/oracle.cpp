#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace ot12::oracle {

namespace {

// Neighbour of (s, x, y) across kind k by the coordinate rule, unwrapped.
std::array<int, 3> across(int s, int x, int y, int k) {
  if (s == 0) {
    if (k == 0) return {1, x, y};
    if (k == 1) return {1, x, y - 1};
    return {1, x - 1, y};
  }
  if (k == 0) return {0, x, y};
  if (k == 1) return {0, x, y + 1};
  return {0, x + 1, y};
}

// Per vertex and kind: dense edge index, or -1 with a stub value.
struct Incidences {
  std::vector<long> edge;   // 3 * v + k
  std::vector<char> stub;   // presence of exterior stubs
};

Incidences incidences(const Geometry& g) {
  const int W = g.width();
  const int H = g.height();
  const std::size_t nv = g.vertex_count();
  Incidences inc{std::vector<long>(3 * nv, -1), std::vector<char>(3 * nv, 0)};
  auto inside = [&](int x, int y) { return x >= 0 && y >= 0 && x < W && y < H; };
  auto index_of = [&](int s, int x, int y) {
    if (g.is_torus()) {
      x = ((x % W) + W) % W;
      y = ((y % H) + H) % H;
    }
    return static_cast<std::size_t>(2 * (y * W + x) + s);
  };
  // Edge numbering: walk white vertices in cell order, kinds a, b, c, keeping
  // edges whose black end exists.
  long next = 0;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      for (int k = 0; k < 3; ++k) {
        const auto b = across(0, x, y, k);
        if (!g.is_torus() && !inside(b[1], b[2])) continue;
        inc.edge[3 * index_of(0, x, y) + k] = next;
        inc.edge[3 * index_of(1, b[1], b[2]) + k] = next;
        ++next;
      }
    }
  }
  if (next != static_cast<long>(g.edge_count())) throw std::logic_error("oracle edge count mismatch");
  if (g.boundary().fixed) {
    std::size_t slot = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      for (int k = 0; k < 3; ++k) {
        if (inc.edge[3 * v + k] < 0) inc.stub[3 * v + k] = g.boundary().stubs.at(slot++) ? 1 : 0;
      }
    }
  }
  return inc;
}

int code_of(const Incidences& inc, std::size_t v, std::uint64_t mask) {
  int code = 0;
  for (int k = 0; k < 3; ++k) {
    const long e = inc.edge[3 * v + k];
    const bool on = e >= 0 ? ((mask >> e) & 1U) != 0 : inc.stub[3 * v + k] != 0;
    if (on) code |= 1 << k;
  }
  return code;
}

double table(int code, const Weights& w) {
  switch (code) {
    case 1: case 6: return w.a;
    case 2: case 5: return w.b;
    case 3: case 4: return w.c;
    default: return 0.0;
  }
}

}  // namespace

std::vector<std::uint64_t> valid_masks(const Geometry& g) {
  if (g.edge_count() > 24) throw std::invalid_argument("oracle limited to 24 edges");
  const Incidences inc = incidences(g);
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t m = 0; m < total; ++m) {
    bool ok = true;
    for (std::size_t v = 0; v < g.vertex_count() && ok; ++v) {
      const int c = code_of(inc, v, m);
      ok = c != 0 && c != 7;
    }
    if (ok) out.push_back(m);
  }
  return out;
}

double mask_weight(const Geometry& g, std::uint64_t mask, const Weights& w) {
  const Incidences inc = incidences(g);
  double p = 1.0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) p *= table(code_of(inc, v, mask), w);
  return p;
}

double partition_function(const Geometry& g, const Weights& w) {
  const Incidences inc = incidences(g);
  double z = 0.0;
  for (std::uint64_t m : valid_masks(g)) {
    double p = 1.0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) p *= table(code_of(inc, v, m), w);
    z += p;
  }
  return z;
}

std::vector<std::vector<std::size_t>> bfs_clusters(const Configuration& cfg, LocalCode code,
                                                   const std::vector<bool>& member, Adjacency adjacency) {
  const Geometry& g = cfg.geometry();
  const std::size_t nv = g.vertex_count();
  auto in = [&](std::size_t v) { return (member.empty() || member[v]) && cfg.local_code(v) == code; };
  std::vector<bool> seen(nv, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < nv; ++s) {
    if (seen[s] || !in(s)) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      const VertexId id = g.vertex_at(v);
      for (int k = 0; k < 3; ++k) {
        const auto n = across(static_cast<int>(id.sublattice), id.x, id.y, k);
        const VertexId nid{static_cast<Sublattice>(n[0]), n[1], n[2]};
        if (!g.is_torus() && !g.contains(nid)) continue;
        const std::size_t u = g.vertex_index(g.wrap(nid));
        if (adjacency == Adjacency::PresentOnly) {
          const VertexId white = id.sublattice == Sublattice::White ? id : g.wrap(nid);
          const auto e = g.edge_index(EdgeId{white.x, white.y, static_cast<EdgeKind>(k)});
          if (!e || !cfg.present(*e)) continue;
        }
        if (!seen[u] && in(u)) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool compatible_by_orderings(const Partition3& p, const Partition3& q) {
  auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& big) {
    const std::set<std::size_t> s(big.begin(), big.end());
    return std::all_of(a.begin(), a.end(), [&](std::size_t x) { return s.count(x) != 0; });
  };
  auto directed = [&](const Partition3& P, const Partition3& Q) {
    std::array<int, 3> pi{0, 1, 2};
    do {
      std::array<int, 3> qi{0, 1, 2};
      do {
        if (subset(Q.block(qi[1]), P.block(pi[0])) && subset(Q.block(qi[2]), P.block(pi[0]))) return true;
      } while (std::next_permutation(qi.begin(), qi.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
  };
  return directed(p, q) || directed(q, p);
}

std::vector<Partition3> partitions_by_labelling(std::size_t k) {
  std::set<std::array<std::vector<std::size_t>, 3>> seen;
  std::vector<Partition3> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 3;
  for (std::size_t m = 0; m < total; ++m) {
    std::array<std::vector<std::size_t>, 3> blocks;
    std::size_t r = m;
    for (std::size_t i = 0; i < k; ++i) {
      blocks[r % 3].push_back(i);
      r /= 3;
    }
    if (blocks[0].empty() || blocks[1].empty() || blocks[2].empty()) continue;
    Partition3 p(blocks);
    if (seen.insert(p.blocks()).second) out.push_back(std::move(p));
  }
  return out;
}

std::size_t max_family_exhaustive(std::size_t k) {
  if (k > 5) throw std::invalid_argument("exhaustive family search limited to k <= 5");
  const auto all = partitions_by_labelling(k);
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    best = std::max(best, chosen.size());
    for (std::size_t i = from; i < all.size(); ++i) {
      bool ok = true;
      for (std::size_t j : chosen) ok = ok && compatible_by_orderings(all[i], all[j]);
      if (!ok) continue;
      chosen.push_back(i);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return best;
}

}  // namespace ot12::oracle
