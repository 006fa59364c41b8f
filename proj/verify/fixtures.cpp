#include "fixtures.hpp"

#include <stdexcept>

namespace ot12::fixtures {

Configuration ab_background(GeometryPtr g) {
  Configuration cfg(g);
  for (std::size_t e = 0; e < cfg.edge_count(); ++e) cfg.set(e, g->edge_kind(e) != EdgeKind::C);
  return cfg;
}

void cut_b(Configuration& cfg, int x, int y) {
  const Geometry& g = cfg.geometry();
  const VertexId w = g.wrap({Sublattice::White, x, y});
  const auto e = g.edge_index({w.x, w.y, EdgeKind::B});
  if (!e) throw std::invalid_argument("no b-edge at " + to_string(w));
  cfg.set(*e, false);
}

void cut_column(Configuration& cfg, int x) {
  for (int y = 0; y < cfg.geometry().height(); ++y) cut_b(cfg, x, y);
}

Configuration three_arm(GeometryPtr g, int cx, int cy) {
  if (!g->is_torus() || g->width() < 8) throw std::invalid_argument("three_arm needs a torus with L >= 8");
  Configuration cfg = ab_background(g);
  cut_column(cfg, cx);
  cut_column(cfg, cx + 2);
  cut_b(cfg, cx + 1, cy);
  cut_b(cfg, cx + 1, cy + 1);
  return cfg;
}

}  // namespace ot12::fixtures
