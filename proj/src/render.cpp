#include "ot12/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ot12 {

namespace {

constexpr double kHalfRoot3 = 0.86602540378443864676;

struct Point {
  double x;
  double y;
};

// SVG coordinates (y down) of a vertex in unwrapped cell coordinates.
Point position(const VertexId& v) {
  Point p{1.5 * (v.x + v.y), kHalfRoot3 * (v.y - v.x)};
  if (v.sublattice == Sublattice::Black) p.x += 1.0;
  return p;
}

Point direction(EdgeKind k) {
  switch (k) {
    case EdgeKind::A: return {1.0, 0.0};
    case EdgeKind::B: return {-0.5, -kHalfRoot3};
    case EdgeKind::C: return {-0.5, kHalfRoot3};
  }
  return {0.0, 0.0};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string hsl(std::size_t index) {
  const double hue = std::fmod(static_cast<double>(index) * 137.508, 360.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,70%%,60%%)", hue);
  return buf;
}

}  // namespace

std::string render_svg(const Configuration& cfg, const RenderOptions& options) {
  const Geometry& g = cfg.geometry();
  const CropWindow crop = options.crop.value_or(CropWindow{0, 0, g.width(), g.height()});
  if (crop.width < 1 || crop.height < 1) throw std::invalid_argument("crop window must be nonempty");
  if (!g.is_torus() && (crop.x0 < 0 || crop.y0 < 0 || crop.x0 + crop.width > g.width() || crop.y0 + crop.height > g.height())) {
    throw std::invalid_argument("crop window outside " + g.describe());
  }
  const auto cells = static_cast<std::size_t>(crop.width) * static_cast<std::size_t>(crop.height);
  if (cells > options.max_cells) {
    throw std::invalid_argument("drawing " + std::to_string(cells) + " cells exceeds the limit of " +
                                std::to_string(options.max_cells) + "; pass a crop window");
  }

  std::vector<int> fill(g.vertex_count(), -1);
  if (options.shade_clusters && is_valid(cfg)) {
    std::size_t next = 0;
    const Region region = Region::whole(g);
    for (std::uint8_t c = 1; c <= 6; ++c) {
      if (options.code && options.code->value != c) continue;
      for (const Cluster& cl : census(cfg, LocalCode{c}, region, options.adjacency)) {
        if (cl.size() < options.min_cluster_size) continue;
        for (std::size_t v : cl.members) fill[v] = static_cast<int>(next);
        ++next;
      }
    }
  }

  double minx = std::numeric_limits<double>::max();
  double miny = minx;
  double maxx = -minx;
  double maxy = -minx;
  for (int y = crop.y0; y < crop.y0 + crop.height; ++y) {
    for (int x = crop.x0; x < crop.x0 + crop.width; ++x) {
      for (auto s : {Sublattice::White, Sublattice::Black}) {
        const Point p = position({s, x, y});
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
      }
    }
  }
  const double pad = 1.0;
  const double sc = options.scale;
  auto X = [&](double x) { return fmt((x - minx + pad) * sc); };
  auto Y = [&](double y) { return fmt((y - miny + pad) * sc); };

  std::ostringstream absent;
  std::ostringstream present;
  std::ostringstream dots;
  for (int y = crop.y0; y < crop.y0 + crop.height; ++y) {
    for (int x = crop.x0; x < crop.x0 + crop.width; ++x) {
      const VertexId w{Sublattice::White, x, y};
      const Point p = position(w);
      const std::size_t wi = g.vertex_index(g.wrap(w));
      for (EdgeKind k : kAllKinds) {
        const Point d = direction(k);
        const bool on = cfg.present_at(wi, k);
        std::ostringstream& os = on ? present : absent;
        os << "<line x1=\"" << X(p.x) << "\" y1=\"" << Y(p.y) << "\" x2=\"" << X(p.x + d.x) << "\" y2=\""
           << Y(p.y + d.y) << "\" class=\"" << kind_name(k) << "\"/>\n";
      }
      for (auto s : {Sublattice::White, Sublattice::Black}) {
        const VertexId v{s, x, y};
        const Point q = position(v);
        const int f = fill[g.vertex_index(g.wrap(v))];
        dots << "<circle cx=\"" << X(q.x) << "\" cy=\"" << Y(q.y) << "\" r=\"" << fmt(0.22 * sc) << "\" fill=\""
             << (f < 0 ? std::string(s == Sublattice::White ? "#ffffff" : "#444444") : hsl(static_cast<std::size_t>(f)))
             << "\"/>\n";
      }
    }
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(maxx + pad) << "\" height=\"" << Y(maxy + pad)
     << "\">\n"
     << "<desc>" << geometry_header(g) << "</desc>\n"
     << "<g stroke=\"#cccccc\" stroke-width=\"" << fmt(0.05 * sc) << "\" stroke-dasharray=\"" << fmt(0.15 * sc)
     << "\">\n"
     << absent.str() << "</g>\n"
     << "<g stroke=\"#000000\" stroke-width=\"" << fmt(0.16 * sc) << "\">\n"
     << present.str() << "</g>\n"
     << "<g stroke=\"#000000\" stroke-width=\"" << fmt(0.03 * sc) << "\">\n"
     << dots.str() << "</g>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace ot12
