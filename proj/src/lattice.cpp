#include "ot12/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ot12 {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

char kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::A: return 'a';
    case EdgeKind::B: return 'b';
    case EdgeKind::C: return 'c';
  }
  return '?';
}

std::string to_string(const VertexId& v) {
  std::ostringstream os;
  os << (v.sublattice == Sublattice::White ? 'W' : 'B') << '(' << v.x << ',' << v.y << ')';
  return os.str();
}

std::string to_string(const EdgeId& e) {
  std::ostringstream os;
  os << kind_name(e.kind) << '@' << '(' << e.x << ',' << e.y << ')';
  return os.str();
}

VertexId step(const VertexId& v, EdgeKind k) {
  if (v.sublattice == Sublattice::White) {
    switch (k) {
      case EdgeKind::A: return {Sublattice::Black, v.x, v.y};
      case EdgeKind::B: return {Sublattice::Black, v.x, v.y - 1};
      case EdgeKind::C: return {Sublattice::Black, v.x - 1, v.y};
    }
  }
  switch (k) {
    case EdgeKind::A: return {Sublattice::White, v.x, v.y};
    case EdgeKind::B: return {Sublattice::White, v.x, v.y + 1};
    case EdgeKind::C: return {Sublattice::White, v.x + 1, v.y};
  }
  return v;
}

EdgeId edge_of(const VertexId& v, EdgeKind k) {
  if (v.sublattice == Sublattice::White) return {v.x, v.y, k};
  const VertexId w = step(v, k);
  return {w.x, w.y, k};
}

// ---------------------------------------------------------------------------

Geometry Geometry::torus(int L) {
  if (L < 2) throw std::invalid_argument("torus requires L >= 2 (L = 1 creates multi-edges)");
  return Geometry(true, L, L, WindowBoundary::free_boundary());
}

Geometry Geometry::window(int width, int height, WindowBoundary boundary) {
  if (width < 1 || height < 1) throw std::invalid_argument("window dimensions must be positive");
  return Geometry(false, width, height, std::move(boundary));
}

Geometry::Geometry(bool torus, int width, int height, WindowBoundary boundary)
    : torus_(torus), width_(width), height_(height), boundary_(std::move(boundary)) {
  const std::size_t cells = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  edge_lookup_.assign(3 * cells, kExterior);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const VertexId w{Sublattice::White, x, y};
      for (EdgeKind k : kAllKinds) {
        const VertexId b = step(w, k);
        if (!torus_ && !contains(b)) continue;
        const std::size_t cell = static_cast<std::size_t>(y * width_ + x);
        edge_lookup_[3 * cell + static_cast<std::size_t>(k)] = static_cast<std::int32_t>(edge_owner_.size());
        edge_owner_.push_back({x, y, k});
      }
    }
  }

  const std::size_t nv = vertex_count();
  incident_.assign(3 * nv, kExterior);
  adjacent_.assign(3 * nv, kExterior);
  stubs_.assign(3 * nv, kExterior);
  ends_.assign(2 * edge_owner_.size(), 0);
  std::int32_t slot = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    const VertexId id = vertex_at(v);
    for (EdgeKind k : kAllKinds) {
      const std::size_t s = 3 * v + static_cast<std::size_t>(k);
      const VertexId u = wrap(step(id, k));
      if (!contains(u)) {
        stubs_[s] = slot++;
        continue;
      }
      adjacent_[s] = static_cast<std::int32_t>(vertex_index(u));
      const EdgeId e = edge_of(id, k);
      const EdgeId ew{torus_ ? mod(e.x, width_) : e.x, torus_ ? mod(e.y, height_) : e.y, k};
      const std::int32_t ei = edge_lookup_[3 * static_cast<std::size_t>(ew.y * width_ + ew.x) + static_cast<std::size_t>(k)];
      incident_[s] = ei;
      ends_[2 * static_cast<std::size_t>(ei) + static_cast<std::size_t>(id.sublattice)] = v;
    }
  }
  stub_slots_ = static_cast<std::size_t>(slot);
  if (boundary_.fixed && boundary_.stubs.size() != stub_slots_) {
    throw std::invalid_argument("fixed boundary has " + std::to_string(boundary_.stubs.size()) +
                                " stubs, window needs " + std::to_string(stub_slots_));
  }
  if (torus_ && boundary_.fixed) throw std::invalid_argument("a torus has no boundary");
}

bool Geometry::contains(const VertexId& v) const noexcept {
  return v.x >= 0 && v.x < width_ && v.y >= 0 && v.y < height_;
}

VertexId Geometry::wrap(const VertexId& v) const noexcept {
  if (!torus_) return v;
  return {v.sublattice, mod(v.x, width_), mod(v.y, height_)};
}

std::size_t Geometry::vertex_index(const VertexId& v) const {
  if (!contains(v)) throw std::out_of_range("vertex " + to_string(v) + " outside " + describe());
  return 2 * static_cast<std::size_t>(v.y * width_ + v.x) + static_cast<std::size_t>(v.sublattice);
}

VertexId Geometry::vertex_at(std::size_t index) const {
  if (index >= vertex_count()) throw std::out_of_range("vertex index out of range");
  const int cell = static_cast<int>(index / 2);
  return {static_cast<Sublattice>(index % 2), cell % width_, cell / width_};
}

std::optional<std::size_t> Geometry::edge_index(const EdgeId& e) const {
  EdgeId w = e;
  if (torus_) {
    w.x = mod(e.x, width_);
    w.y = mod(e.y, height_);
  }
  if (w.x < 0 || w.x >= width_ || w.y < 0 || w.y >= height_) return std::nullopt;
  const std::int32_t i = edge_lookup_[3 * static_cast<std::size_t>(w.y * width_ + w.x) + static_cast<std::size_t>(w.kind)];
  if (i == kExterior) return std::nullopt;
  return static_cast<std::size_t>(i);
}

std::array<Incidence, 3> Geometry::neighbors(const VertexId& v) const {
  if (!contains(v)) throw std::invalid_argument("invalid vertex " + to_string(v) + " for " + describe());
  std::array<Incidence, 3> out;
  for (EdgeKind k : kAllKinds) {
    Incidence& inc = out[static_cast<std::size_t>(k)];
    const VertexId u = step(v, k);
    const VertexId uw = wrap(u);
    inc.kind = k;
    inc.exterior = !contains(uw);
    inc.vertex = inc.exterior ? u : uw;
    EdgeId e = edge_of(v, k);
    if (torus_) {
      e.x = mod(e.x, width_);
      e.y = mod(e.y, height_);
    }
    inc.edge = e;
  }
  return out;
}

std::string Geometry::describe() const {
  std::ostringstream os;
  if (torus_) {
    os << "torus L=" << width_;
  } else {
    os << "window W=" << width_ << " H=" << height_ << " boundary=" << (boundary_.fixed ? "fixed" : "free");
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int BoxSpec::x0() const noexcept { return cx - floor_div(n, 2); }
int BoxSpec::y0() const noexcept { return cy - floor_div(n, 2); }

bool box_contains(const BoxSpec& b, const VertexId& v) {
  return v.x >= b.x0() && v.x < b.x0() + b.n && v.y >= b.y0() && v.y < b.y0() + b.n;
}

std::vector<VertexId> box_vertices(const BoxSpec& b) {
  std::vector<VertexId> out;
  out.reserve(2 * static_cast<std::size_t>(b.n) * static_cast<std::size_t>(b.n));
  for (int y = b.y0(); y < b.y0() + b.n; ++y) {
    for (int x = b.x0(); x < b.x0() + b.n; ++x) {
      out.push_back({Sublattice::White, x, y});
      out.push_back({Sublattice::Black, x, y});
    }
  }
  return out;
}

void require_box_fits(const BoxSpec& b, const Geometry& g, int margin) {
  if (b.n < 1) throw std::invalid_argument("box side must be >= 1");
  const int span = b.n + 2 * margin;
  if (g.is_torus()) {
    if (span > g.width()) {
      throw std::invalid_argument("box n=" + std::to_string(b.n) + " with margin " + std::to_string(margin) +
                                  " does not fit in " + g.describe());
    }
    return;
  }
  if (b.x0() - margin < 0 || b.y0() - margin < 0 || b.x0() + b.n - 1 + margin >= g.width() ||
      b.y0() + b.n - 1 + margin >= g.height()) {
    throw std::invalid_argument("box n=" + std::to_string(b.n) + " at (" + std::to_string(b.cx) + "," +
                                std::to_string(b.cy) + ") with margin " + std::to_string(margin) +
                                " overflows " + g.describe());
  }
}

std::vector<ClassifiedVertex> classify_box_vertices(const BoxSpec& b, const Geometry& g) {
  require_box_fits(b, g, 2);
  std::vector<ClassifiedVertex> out;
  for (const VertexId& v : box_vertices(b)) {
    int inside = 0;
    for (EdgeKind k : kAllKinds) inside += box_contains(b, step(v, k)) ? 1 : 0;
    const VertexId w = g.wrap(v);
    const auto type = inside == 3 ? BoxVertexType::TypeI : inside == 2 ? BoxVertexType::TypeII : BoxVertexType::TypeIII;
    out.push_back({w, g.vertex_index(w), type});
  }
  return out;
}

std::vector<std::size_t> box_boundary_vertices(const BoxSpec& b, const Geometry& g) {
  std::vector<std::size_t> out;
  for (const auto& cv : classify_box_vertices(b, g)) {
    if (cv.type != BoxVertexType::TypeI) out.push_back(cv.index);
  }
  return out;
}

std::vector<std::size_t> box_boundary_edges(const BoxSpec& b, const Geometry& g) {
  require_box_fits(b, g, 1);
  std::vector<std::size_t> out;
  for (const VertexId& v : box_vertices(b)) {
    for (EdgeKind k : kAllKinds) {
      if (box_contains(b, step(v, k))) continue;
      out.push_back(*g.edge_index(edge_of(v, k)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> box_interior_edges(const BoxSpec& b, const Geometry& g) {
  require_box_fits(b, g, 1);
  std::vector<std::size_t> out;
  for (const VertexId& v : box_vertices(b)) {
    if (v.sublattice != Sublattice::White) continue;
    for (EdgeKind k : kAllKinds) {
      if (box_contains(b, step(v, k))) out.push_back(*g.edge_index(edge_of(v, k)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> outer_contour(const BoxSpec& b, const Geometry& g) {
  require_box_fits(b, g, 2);
  std::vector<char> on_boundary(g.vertex_count(), 0);
  for (std::size_t v : box_boundary_vertices(b, g)) on_boundary[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t e : box_interior_edges(b, g)) {
    const auto [u, v] = g.endpoints(e);
    if (on_boundary[u] || on_boundary[v]) out.push_back(e);
  }
  return out;
}

std::array<VertexId, 2> box_corners(const BoxSpec& b) {
  return {VertexId{Sublattice::White, b.x0(), b.y0()},
          VertexId{Sublattice::Black, b.x0() + b.n - 1, b.y0() + b.n - 1}};
}

std::array<VertexId, 6> hexagon_from_corner(const VertexId& corner) {
  static constexpr std::array<EdgeKind, 5> kWalk = {EdgeKind::B, EdgeKind::A, EdgeKind::C, EdgeKind::B, EdgeKind::A};
  std::array<VertexId, 6> h{};
  h[0] = corner;
  for (std::size_t i = 0; i < kWalk.size(); ++i) h[i + 1] = step(h[i], kWalk[i]);
  return h;
}

std::array<VertexId, 6> face_vertices(int x, int y) {
  static constexpr std::array<EdgeKind, 5> kWalk = {EdgeKind::A, EdgeKind::C, EdgeKind::B, EdgeKind::A, EdgeKind::C};
  std::array<VertexId, 6> h{};
  h[0] = {Sublattice::White, x, y};
  for (std::size_t i = 0; i < kWalk.size(); ++i) h[i + 1] = step(h[i], kWalk[i]);
  return h;
}

CornerHexagons corner_hexagons(const BoxSpec& b, const Geometry& g) {
  require_box_fits(b, g, 2);
  CornerHexagons out;
  const auto corners = box_corners(b);
  std::vector<std::size_t> excl;
  auto add_closure = [&](const std::array<VertexId, 6>& h) {
    for (const VertexId& v : h) {
      excl.push_back(g.vertex_index(g.wrap(v)));
      for (EdgeKind k : kAllKinds) excl.push_back(g.vertex_index(g.wrap(step(v, k))));
    }
  };
  for (int side = 0; side < 2; ++side) {
    const auto hex = hexagon_from_corner(corners[side]);
    auto& dst = side == 0 ? out.h1 : out.h2;
    for (std::size_t i = 0; i < 6; ++i) dst[i] = g.vertex_index(g.wrap(hex[i]));
    add_closure(hex);
    // p (resp. q) and its two other neighbours, both boundary vertices of b.
    const VertexId partner = step(corners[side], EdgeKind::A);
    (side == 0 ? out.p : out.q) = g.vertex_index(g.wrap(partner));
    excl.push_back(g.vertex_index(g.wrap(step(partner, EdgeKind::B))));
    excl.push_back(g.vertex_index(g.wrap(step(partner, EdgeKind::C))));
  }
  std::sort(excl.begin(), excl.end());
  excl.erase(std::unique(excl.begin(), excl.end()), excl.end());
  out.exclusion = std::move(excl);
  return out;
}

}  // namespace ot12
