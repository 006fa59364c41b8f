#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ot12/lattice.hpp"

namespace ot12 {

/// 3-bit local configuration: bit0 = a-edge, bit1 = b-edge, bit2 = c-edge.
/// Read as a binary number (c, b, a) it gives the usual digit string, e.g. {001}
/// means only the horizontal edge is present.
struct LocalCode {
  std::uint8_t value = 0;

  constexpr bool valid() const noexcept { return value != 0 && value != 7; }
  constexpr auto operator<=>(const LocalCode&) const = default;
};

inline constexpr LocalCode kCode001{1};

/// "001", "110", ...
std::string code_digits(LocalCode c);

struct Weights {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;

  /// Throws std::invalid_argument unless a, b, c > 0.
  static Weights make(double a, double b, double c);
};

/// Table lookup 0, a, b, c, c, b, a, 0 for codes 0..7.
double weight_of(LocalCode code, const Weights& w) noexcept;

/// Edge-presence bitset over a geometry. Intermediate states that violate
/// the 1-2 law are representable; validity is a checked predicate.
class Configuration {
 public:
  explicit Configuration(GeometryPtr geometry);

  const Geometry& geometry() const noexcept { return *geometry_; }
  const GeometryPtr& geometry_ptr() const noexcept { return geometry_; }
  std::size_t edge_count() const noexcept { return geometry_->edge_count(); }

  bool present(std::size_t e) const noexcept { return (words_[e >> 6] >> (e & 63)) & 1U; }
  void set(std::size_t e, bool on) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (on) {
      words_[e >> 6] |= bit;
    } else {
      words_[e >> 6] &= ~bit;
    }
  }
  void flip(std::size_t e) noexcept { words_[e >> 6] ^= std::uint64_t{1} << (e & 63); }

  /// Presence of v's edge of kind k, resolving window stubs through the
  /// geometry's boundary condition (free: absent).
  bool present_at(std::size_t v, EdgeKind k) const noexcept;

  int degree(std::size_t v) const noexcept;
  LocalCode local_code(std::size_t v) const noexcept;
  LocalCode local_code(const VertexId& v) const { return local_code(geometry_->vertex_index(v)); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Low 64 bits of the bitset; a dense key for geometries with <= 64 edges.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool operator==(const Configuration& other) const {
    return *geometry_ == *other.geometry_ && words_ == other.words_;
  }

 private:
  GeometryPtr geometry_;
  std::vector<std::uint64_t> words_;
};

/// Every a-edge present, nothing else: all vertices carry {001}.
Configuration all_horizontal(GeometryPtr g);

/// Vertices of degree 0 or 3, in index order.
std::vector<std::size_t> violations(const Configuration& cfg);
bool is_valid(const Configuration& cfg);

/// Sum over vertices of log weight_of(code); -infinity if any vertex is
/// code 0 or 7.
double log_weight(const Configuration& cfg, const Weights& w);

Configuration flip_edge(Configuration cfg, std::size_t e);

// ---------------------------------------------------------------------------
// Serialization
//
//   ot12 v1 torus L=<n>
//   ot12 v1 window W=<w> H=<h> boundary=free
//   ot12 v1 window W=<w> H=<h> boundary=fixed:<hex stubs>
//   <hex of the edge bitset>
//
// Bit i of the bitset is bit (i % 8) of byte i / 8; bytes are written as two
// lowercase hex digits. Edge order is the geometry's dense order.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

std::string encode_bits_hex(const std::vector<bool>& bits);
/// Inverse of encode_bits_hex; errors are reported at base_offset + position.
std::vector<bool> decode_bits_hex(std::string_view hex, std::size_t nbits, std::size_t base_offset = 0);
std::string geometry_header(const Geometry& g);

std::string write_configuration(const Configuration& cfg);
Configuration read_configuration(std::string_view text);

void save_configuration(const Configuration& cfg, const std::string& path);
Configuration load_configuration(const std::string& path);

}  // namespace ot12
