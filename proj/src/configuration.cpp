#include "ot12/configuration.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ot12 {

std::string code_digits(LocalCode c) {
  std::string s(3, '0');
  for (int bit = 0; bit < 3; ++bit) {
    if (c.value & (1U << bit)) s[2 - bit] = '1';
  }
  return s;
}

Weights Weights::make(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw std::invalid_argument("weights a, b, c must be finite and strictly positive");
  }
  return {a, b, c};
}

double weight_of(LocalCode code, const Weights& w) noexcept {
  switch (code.value) {
    case 1:
    case 6: return w.a;
    case 2:
    case 5: return w.b;
    case 3:
    case 4: return w.c;
    default: return 0.0;
  }
}

Configuration::Configuration(GeometryPtr geometry)
    : geometry_(std::move(geometry)), words_((geometry_->edge_count() + 63) / 64, 0) {}

bool Configuration::present_at(std::size_t v, EdgeKind k) const noexcept {
  const std::int32_t e = geometry_->incident_edge(v, k);
  if (e != kExterior) return present(static_cast<std::size_t>(e));
  const auto& boundary = geometry_->boundary();
  if (!boundary.fixed) return false;
  return boundary.stubs[static_cast<std::size_t>(geometry_->stub(v, k))];
}

int Configuration::degree(std::size_t v) const noexcept {
  return static_cast<int>(present_at(v, EdgeKind::A)) + static_cast<int>(present_at(v, EdgeKind::B)) +
         static_cast<int>(present_at(v, EdgeKind::C));
}

LocalCode Configuration::local_code(std::size_t v) const noexcept {
  return LocalCode{static_cast<std::uint8_t>((present_at(v, EdgeKind::A) ? 1U : 0U) |
                                             (present_at(v, EdgeKind::B) ? 2U : 0U) |
                                             (present_at(v, EdgeKind::C) ? 4U : 0U))};
}

Configuration all_horizontal(GeometryPtr g) {
  Configuration cfg(std::move(g));
  const Geometry& geom = cfg.geometry();
  for (std::size_t e = 0; e < geom.edge_count(); ++e) {
    if (geom.edge_kind(e) == EdgeKind::A) cfg.set(e, true);
  }
  return cfg;
}

std::vector<std::size_t> violations(const Configuration& cfg) {
  std::vector<std::size_t> out;
  const std::size_t n = cfg.geometry().vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    const int d = cfg.degree(v);
    if (d == 0 || d == 3) out.push_back(v);
  }
  return out;
}

bool is_valid(const Configuration& cfg) {
  const std::size_t n = cfg.geometry().vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    const int d = cfg.degree(v);
    if (d == 0 || d == 3) return false;
  }
  return true;
}

double log_weight(const Configuration& cfg, const Weights& w) {
  const double logs[8] = {0.0, std::log(w.a), std::log(w.b), std::log(w.c), std::log(w.c), std::log(w.b), std::log(w.a), 0.0};
  double total = 0.0;
  const std::size_t n = cfg.geometry().vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    const LocalCode c = cfg.local_code(v);
    if (!c.valid()) return -std::numeric_limits<double>::infinity();
    total += logs[c.value];
  }
  return total;
}

Configuration flip_edge(Configuration cfg, std::size_t e) {
  if (e >= cfg.edge_count()) throw std::out_of_range("edge index out of range");
  cfg.flip(e);
  return cfg;
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kHex[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<bool> decode_bits_hex(std::string_view hex, std::size_t nbits, std::size_t base_offset) {
  const std::size_t nbytes = (nbits + 7) / 8;
  if (hex.size() != 2 * nbytes) {
    throw ParseError("expected " + std::to_string(2 * nbytes) + " hex digits, found " + std::to_string(hex.size()),
                     base_offset);
  }
  std::vector<bool> bits(nbits, false);
  for (std::size_t i = 0; i < nbytes; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0) throw ParseError("invalid hex digit", base_offset + 2 * i);
    if (lo < 0) throw ParseError("invalid hex digit", base_offset + 2 * i + 1);
    const unsigned byte = static_cast<unsigned>(hi * 16 + lo);
    for (unsigned bit = 0; bit < 8; ++bit) {
      const std::size_t idx = 8 * i + bit;
      const bool on = (byte >> bit) & 1U;
      if (idx >= nbits) {
        if (on) throw ParseError("padding bits must be zero", base_offset + 2 * i);
        continue;
      }
      bits[idx] = on;
    }
  }
  return bits;
}

namespace {

// Parses "key=<int>" at the front of `field`.
int parse_int_field(std::string_view field, std::string_view key, std::size_t offset) {
  if (field.substr(0, key.size()) != key) {
    throw ParseError("expected '" + std::string(key) + "'", offset);
  }
  const std::string_view digits = field.substr(key.size());
  if (digits.empty()) throw ParseError("missing integer", offset + key.size());
  int value = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') throw ParseError("invalid integer", offset + key.size() + i);
    value = value * 10 + (digits[i] - '0');
    if (value > 1 << 20) throw ParseError("integer too large", offset + key.size() + i);
  }
  return value;
}

}  // namespace

std::string encode_bits_hex(const std::vector<bool>& bits) {
  const std::size_t nbytes = (bits.size() + 7) / 8;
  std::string out;
  out.reserve(2 * nbytes);
  for (std::size_t i = 0; i < nbytes; ++i) {
    unsigned byte = 0;
    for (unsigned bit = 0; bit < 8; ++bit) {
      const std::size_t idx = 8 * i + bit;
      if (idx < bits.size() && bits[idx]) byte |= 1U << bit;
    }
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 15U]);
  }
  return out;
}

std::string geometry_header(const Geometry& g) {
  std::ostringstream os;
  os << "ot12 v1 ";
  if (g.is_torus()) {
    os << "torus L=" << g.width();
  } else {
    os << "window W=" << g.width() << " H=" << g.height() << " boundary=";
    if (g.boundary().fixed) {
      os << "fixed:" << encode_bits_hex(g.boundary().stubs);
    } else {
      os << "free";
    }
  }
  return os.str();
}

std::string write_configuration(const Configuration& cfg) {
  std::vector<bool> bits(cfg.edge_count());
  for (std::size_t e = 0; e < bits.size(); ++e) bits[e] = cfg.present(e);
  return geometry_header(cfg.geometry()) + "\n" + encode_bits_hex(bits) + "\n";
}

Configuration read_configuration(std::string_view text) {
  const std::size_t nl = text.find('\n');
  if (nl == std::string_view::npos) throw ParseError("missing header line terminator", text.size());
  const std::string_view header = text.substr(0, nl);

  // Split the header on single spaces, remembering offsets for diagnostics.
  std::vector<std::pair<std::string_view, std::size_t>> fields;
  std::size_t pos = 0;
  while (pos <= header.size()) {
    std::size_t sp = header.find(' ', pos);
    if (sp == std::string_view::npos) sp = header.size();
    fields.emplace_back(header.substr(pos, sp - pos), pos);
    pos = sp + 1;
  }
  if (fields.size() < 3 || fields[0].first != "ot12") throw ParseError("expected magic 'ot12'", 0);
  if (fields[1].first != "v1") throw ParseError("unsupported version '" + std::string(fields[1].first) + "'", fields[1].second);

  GeometryPtr g;
  if (fields[2].first == "torus") {
    if (fields.size() != 4) throw ParseError("torus header takes exactly one field", fields[2].second);
    const int L = parse_int_field(fields[3].first, "L=", fields[3].second);
    if (L < 2) throw ParseError("torus requires L >= 2", fields[3].second);
    g = std::make_shared<const Geometry>(Geometry::torus(L));
  } else if (fields[2].first == "window") {
    if (fields.size() != 6) throw ParseError("window header takes W=, H=, boundary=", fields[2].second);
    const int w = parse_int_field(fields[3].first, "W=", fields[3].second);
    const int h = parse_int_field(fields[4].first, "H=", fields[4].second);
    if (w < 1 || h < 1) throw ParseError("window dimensions must be positive", fields[3].second);
    const auto [bfield, boff] = fields[5];
    if (bfield == "boundary=free") {
      g = std::make_shared<const Geometry>(Geometry::window(w, h));
    } else if (bfield.substr(0, 15) == "boundary=fixed:") {
      const std::size_t stubs = Geometry::window(w, h).stub_count();
      auto bits = decode_bits_hex(bfield.substr(15), stubs, boff + 15);
      g = std::make_shared<const Geometry>(Geometry::window(w, h, WindowBoundary::fixed_boundary(std::move(bits))));
    } else {
      throw ParseError("boundary must be 'free' or 'fixed:<hex>'", boff);
    }
  } else {
    throw ParseError("unknown geometry mode '" + std::string(fields[2].first) + "'", fields[2].second);
  }

  std::string_view body = text.substr(nl + 1);
  std::size_t body_end = body.find('\n');
  if (body_end == std::string_view::npos) body_end = body.size();
  if (body.substr(body_end).find_first_not_of('\n') != std::string_view::npos) {
    throw ParseError("trailing data after bitset", nl + 1 + body_end + 1);
  }
  const auto bits = decode_bits_hex(body.substr(0, body_end), g->edge_count(), nl + 1);
  Configuration cfg(g);
  for (std::size_t e = 0; e < bits.size(); ++e) cfg.set(e, bits[e]);
  return cfg;
}

void save_configuration(const Configuration& cfg, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << write_configuration(cfg);
}

Configuration load_configuration(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return read_configuration(ss.str());
}

}  // namespace ot12
