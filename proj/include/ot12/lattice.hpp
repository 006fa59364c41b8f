#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ot12 {

enum class Sublattice : std::uint8_t { White = 0, Black = 1 };

// a = horizontal. Counter-clockwise from the a-edge one meets b then c, at
// both sublattices.
enum class EdgeKind : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<EdgeKind, 3> kAllKinds = {EdgeKind::A, EdgeKind::B, EdgeKind::C};

char kind_name(EdgeKind k);

struct VertexId {
  Sublattice sublattice = Sublattice::White;
  int x = 0;
  int y = 0;

  auto operator<=>(const VertexId&) const = default;
};

// Every edge is owned by its White endpoint W(x, y).
struct EdgeId {
  int x = 0;
  int y = 0;
  EdgeKind kind = EdgeKind::A;

  auto operator<=>(const EdgeId&) const = default;
};

std::string to_string(const VertexId& v);
std::string to_string(const EdgeId& e);

/// Returns the vertex reached from v through its edge of the given kind,
/// in unwrapped coordinates.
///
///   W(x,y) ~ B(x,y) (a), B(x,y-1) (b), B(x-1,y) (c)
///   B(x,y) ~ W(x,y) (a), W(x,y+1) (b), W(x+1,y) (c)
VertexId step(const VertexId& v, EdgeKind k);

/// The edge of the given kind at v, in unwrapped coordinates.
EdgeId edge_of(const VertexId& v, EdgeKind k);

inline constexpr std::int32_t kExterior = -1;

/// Exterior-edge assignment for a window: one bit per exterior stub, in
/// canonical stub order (vertex index order, kinds a, b, c).
struct WindowBoundary {
  bool fixed = false;
  std::vector<bool> stubs;

  static WindowBoundary free_boundary() { return {}; }
  static WindowBoundary fixed_boundary(std::vector<bool> stubs) { return {true, std::move(stubs)}; }

  bool operator==(const WindowBoundary&) const = default;
};

struct Incidence {
  VertexId vertex;
  EdgeId edge;
  EdgeKind kind = EdgeKind::A;
  bool exterior = false;
};

/// Finite proxy for the hexagonal lattice: either an L x L torus or a
/// w x h window of unit cells with a free or fixed exterior.
///
/// Vertices are densely indexed as 2 * (y * width + x) + sublattice. On a
/// torus edges are indexed 3 * cell + kind; on a window only edges with both
/// endpoints inside are indexed, in the same (cell, kind) order.
class Geometry {
 public:
  static Geometry torus(int L);
  static Geometry window(int width, int height, WindowBoundary boundary = WindowBoundary::free_boundary());

  bool is_torus() const noexcept { return torus_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(2 * width_ * height_); }
  std::size_t edge_count() const noexcept { return edge_owner_.size(); }
  std::size_t stub_count() const noexcept { return stub_slots_; }

  const WindowBoundary& boundary() const noexcept { return boundary_; }

  /// True when v lies in the canonical coordinate range.
  bool contains(const VertexId& v) const noexcept;
  /// Reduces coordinates mod L on a torus; identity on a window.
  VertexId wrap(const VertexId& v) const noexcept;

  std::size_t vertex_index(const VertexId& v) const;
  VertexId vertex_at(std::size_t index) const;

  std::optional<std::size_t> edge_index(const EdgeId& e) const;
  EdgeId edge_at(std::size_t index) const { return edge_owner_.at(index); }

  /// The three incidences of v in (a, b, c) order.
  std::array<Incidence, 3> neighbors(const VertexId& v) const;

  // Dense fast paths. kExterior marks a neighbour or edge outside a window.
  std::int32_t incident_edge(std::size_t v, EdgeKind k) const noexcept {
    return incident_[3 * v + static_cast<std::size_t>(k)];
  }
  std::int32_t neighbor(std::size_t v, EdgeKind k) const noexcept {
    return adjacent_[3 * v + static_cast<std::size_t>(k)];
  }
  /// Stub slot for an exterior edge, kExterior otherwise.
  std::int32_t stub(std::size_t v, EdgeKind k) const noexcept {
    return stubs_[3 * v + static_cast<std::size_t>(k)];
  }
  std::array<std::size_t, 2> endpoints(std::size_t e) const noexcept {
    return {ends_[2 * e], ends_[2 * e + 1]};
  }
  EdgeKind edge_kind(std::size_t e) const noexcept { return edge_owner_[e].kind; }

  std::string describe() const;

  bool operator==(const Geometry& other) const {
    return torus_ == other.torus_ && width_ == other.width_ && height_ == other.height_ &&
           boundary_ == other.boundary_;
  }

 private:
  Geometry(bool torus, int width, int height, WindowBoundary boundary);

  bool torus_;
  int width_;
  int height_;
  WindowBoundary boundary_;
  std::size_t stub_slots_ = 0;
  std::vector<EdgeId> edge_owner_;
  std::vector<std::int32_t> edge_lookup_;  // 3 * cell + kind -> dense edge index
  std::vector<std::int32_t> incident_;
  std::vector<std::int32_t> adjacent_;
  std::vector<std::int32_t> stubs_;
  std::vector<std::size_t> ends_;
};

using GeometryPtr = std::shared_ptr<const Geometry>;

inline GeometryPtr make_torus(int L) { return std::make_shared<const Geometry>(Geometry::torus(L)); }

// ---------------------------------------------------------------------------
// Boxes

/// B_n: an n x n rhombus of unit cells. The origin cell is
/// center - floor(n / 2), so B_n and B_{n+2} with the same center are nested
/// with a one-cell ring between them.
struct BoxSpec {
  int n = 1;
  int cx = 0;
  int cy = 0;

  int x0() const noexcept;
  int y0() const noexcept;
  BoxSpec enlarged(int by = 2) const noexcept { return {n + by, cx, cy}; }
};

enum class BoxVertexType : std::uint8_t { TypeI = 1, TypeII = 2, TypeIII = 3 };

/// Box membership in the box's own unwrapped frame.
bool box_contains(const BoxSpec& b, const VertexId& unwrapped);

/// All 2 n^2 vertices of b, unwrapped, in (cell row-major, W then B) order.
std::vector<VertexId> box_vertices(const BoxSpec& b);

/// Throws std::invalid_argument unless b plus `margin` cells on each side fits
/// in g without self-overlap.
void require_box_fits(const BoxSpec& b, const Geometry& g, int margin);

struct ClassifiedVertex {
  VertexId vertex;      // wrapped
  std::size_t index;    // dense
  BoxVertexType type;
};

std::vector<ClassifiedVertex> classify_box_vertices(const BoxSpec& b, const Geometry& g);

/// Boundary vertices of b: box vertices with at least one neighbour outside.
std::vector<std::size_t> box_boundary_vertices(const BoxSpec& b, const Geometry& g);

/// Edges with exactly one endpoint in the box.
std::vector<std::size_t> box_boundary_edges(const BoxSpec& b, const Geometry& g);

/// Edges with both endpoints in the box.
std::vector<std::size_t> box_interior_edges(const BoxSpec& b, const Geometry& g);

/// Interior edges sharing an endpoint with a boundary edge.
std::vector<std::size_t> outer_contour(const BoxSpec& b, const Geometry& g);

/// The two TypeIII corners: v1 = W(x0, y0) and w1 = B(x0+n-1, y0+n-1).
std::array<VertexId, 2> box_corners(const BoxSpec& b);

struct CornerHexagons {
  std::array<std::size_t, 6> h1;  // v1..v6, v1 is the corner
  std::array<std::size_t, 6> h2;  // w1..w6
  std::size_t p = 0;              // horizontal partner of v1
  std::size_t q = 0;              // horizontal partner of w1
  std::vector<std::size_t> exclusion;  // sorted, |exclusion| = 28
};

/// Walks the face through `corner` that meets no other vertex of the box:
/// v1, then b, a, c, b, a steps (the closing step from v6 is a c-edge).
std::array<VertexId, 6> hexagon_from_corner(const VertexId& corner);

CornerHexagons corner_hexagons(const BoxSpec& b, const Geometry& g);

/// Vertices of the face whose walk a, c, b, a, c, b starts at W(x, y).
std::array<VertexId, 6> face_vertices(int x, int y);

}  // namespace ot12
