#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ergolab/core/rational.hpp"

namespace ergolab::ladder {

using BigNat = boost::multiprecision::cpp_int;

// Vertex roles of the ladder family. Standalone copies G_k use the k-fixed
// sub-alphabet: o = Entry(k), s_n = Top(k,n), t_j = Bottom(k,j), v = Sink(k).
enum class Role : std::uint8_t { source, entry, top, bottom, sink };

struct LadderVertex {
  Role role = Role::source;
  std::uint64_t copy = 0;
  BigNat pos = 0;  // n for Top, j for Bottom, unused otherwise

  static LadderVertex source() { return {Role::source, 0, 0}; }
  static LadderVertex entry(std::uint64_t k) { return {Role::entry, k, 0}; }
  static LadderVertex sink(std::uint64_t k) { return {Role::sink, k, 0}; }
  static LadderVertex top(std::uint64_t k, BigNat n) {
    if (n <= k) {
      throw std::invalid_argument("Top(" + std::to_string(k) + "," + n.str() + ") does not exist: need n >= k+1");
    }
    return {Role::top, k, std::move(n)};
  }
  static LadderVertex bottom(std::uint64_t k, BigNat j) {
    if (j < 1) throw std::invalid_argument("Bottom(" + std::to_string(k) + ",0) does not exist: need j >= 1");
    return {Role::bottom, k, std::move(j)};
  }

  friend bool operator==(const LadderVertex& a, const LadderVertex& b) {
    return a.role == b.role && a.copy == b.copy && a.pos == b.pos;
  }
  friend bool operator<(const LadderVertex& a, const LadderVertex& b) {
    if (a.role != b.role) return a.role < b.role;
    if (a.copy != b.copy) return a.copy < b.copy;
    return a.pos < b.pos;
  }
};

// Stable report rendering: S, E(k), T(k,n), B(k,j), V(k).
inline std::string render(const LadderVertex& v) {
  switch (v.role) {
    case Role::source: return "S";
    case Role::entry: return "E(" + std::to_string(v.copy) + ")";
    case Role::top: return "T(" + std::to_string(v.copy) + "," + v.pos.str() + ")";
    case Role::bottom: return "B(" + std::to_string(v.copy) + "," + v.pos.str() + ")";
    case Role::sink: return "V(" + std::to_string(v.copy) + ")";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const LadderVertex& v) { return os << render(v); }

inline LadderVertex parse_vertex(std::string_view text) {
  static const std::regex pattern(R"(^\s*(S|E|T|B|V)(?:\((\d+)(?:,(\d+))?\))?\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw std::invalid_argument("cannot parse vertex '" + s + "'");
  const std::string tag = m[1];
  const bool has_k = m[2].matched;
  const bool has_pos = m[3].matched;
  if (tag == "S") {
    if (has_k) throw std::invalid_argument("source takes no index: '" + s + "'");
    return LadderVertex::source();
  }
  if (!has_k) throw std::invalid_argument("missing copy index in '" + s + "'");
  const std::uint64_t k = std::stoull(m[2]);
  if (tag == "E" || tag == "V") {
    if (has_pos) throw std::invalid_argument("too many indices in '" + s + "'");
    return tag == "E" ? LadderVertex::entry(k) : LadderVertex::sink(k);
  }
  if (!has_pos) throw std::invalid_argument("missing position in '" + s + "'");
  BigNat pos(m[3].str());
  return tag == "T" ? LadderVertex::top(k, pos) : LadderVertex::bottom(k, pos);
}

// j(n) = 2^{n+1} - n - 2, the bottom-chain landing of the rung leaving s_n.
inline BigNat rung_position(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rung_position: n must be positive");
  BigNat p = 1;
  p <<= (n + 1);
  return p - n - 2;
}

// The n with rung_position(n) == j, if any.
inline std::optional<std::uint64_t> rung_index(const BigNat& j) {
  if (j < 1) return std::nullopt;
  const std::uint64_t top_bit = boost::multiprecision::msb(j);
  for (std::uint64_t q = top_bit > 1 ? top_bit - 1 : 1; q <= top_bit + 1; ++q) {
    if (rung_position(q) == j) return q;
  }
  return std::nullopt;
}

inline bool is_rung_landing(const BigNat& j) { return rung_index(j).has_value(); }

// Weight of Bottom(j) -> Bottom(j-1), Bottom(0) being the sink: 2 at rung
// landings, 1/2 just above one, 1 elsewhere.
inline Rational bottom_weight(const BigNat& j) {
  if (j < 1) throw std::invalid_argument("bottom_weight: j must be positive");
  if (is_rung_landing(j)) return Rational(2);
  if (is_rung_landing(j - 1)) return Rational(1, 2);
  return Rational(1);
}

// Canonical enumeration of the combined graph. Index 0 is the source; tier
// t >= 0 starts at 1 + t^2 + 3t and lists
// [E(t), V(t), T(0,t+1) .. T(t,t+1), B(0,t+1), B(1,t), .. B(t,1)].
inline BigNat tier_start(const BigNat& t) { return 1 + t * t + 3 * t; }

inline LadderVertex enumerate_vertex(std::uint64_t index) {
  if (index == 0) return LadderVertex::source();
  // Largest t with 1 + t^2 + 3t <= index.
  auto start = [](std::uint64_t t) { return 1 + t * t + 3 * t; };
  std::uint64_t t = static_cast<std::uint64_t>(boost::multiprecision::sqrt(BigNat(index)));
  while (t > 0 && start(t) > index) --t;
  while (start(t + 1) <= index) ++t;
  const std::uint64_t offset = index - start(t);
  if (offset == 0) return LadderVertex::entry(t);
  if (offset == 1) return LadderVertex::sink(t);
  if (offset < 3 + t) return LadderVertex::top(offset - 2, t + 1);
  const std::uint64_t k = offset - 3 - t;
  return LadderVertex::bottom(k, t - k + 1);
}

inline BigNat index_of_vertex(const LadderVertex& v) {
  switch (v.role) {
    case Role::source: return 0;
    case Role::entry: return tier_start(v.copy);
    case Role::sink: return tier_start(v.copy) + 1;
    case Role::top: {
      if (v.pos <= v.copy) throw std::invalid_argument("index_of_vertex: nonexistent vertex " + render(v));
      BigNat t = v.pos - 1;
      return tier_start(t) + 2 + v.copy;
    }
    case Role::bottom: {
      if (v.pos < 1) throw std::invalid_argument("index_of_vertex: nonexistent vertex " + render(v));
      BigNat t = v.pos + v.copy - 1;
      return tier_start(t) + 3 + t + v.copy;
    }
  }
  throw std::logic_error("index_of_vertex: bad role");
}

// Enumeration of a standalone copy G_k: O, V, then T(k,k+1+i), B(k,1+i)
// alternating.
inline LadderVertex enumerate_standalone_vertex(std::uint64_t k, std::uint64_t index) {
  if (index == 0) return LadderVertex::entry(k);
  if (index == 1) return LadderVertex::sink(k);
  const std::uint64_t i = (index - 2) / 2;
  return (index % 2 == 0) ? LadderVertex::top(k, k + 1 + i) : LadderVertex::bottom(k, 1 + i);
}

inline BigNat index_of_standalone_vertex(std::uint64_t k, const LadderVertex& v) {
  if (v.copy != k || v.role == Role::source) {
    throw std::invalid_argument("vertex " + render(v) + " is not in G_" + std::to_string(k));
  }
  switch (v.role) {
    case Role::entry: return 0;
    case Role::sink: return 1;
    case Role::top:
      if (v.pos <= k) throw std::invalid_argument("nonexistent vertex " + render(v));
      return 2 + 2 * (v.pos - k - 1);
    case Role::bottom:
      if (v.pos < 1) throw std::invalid_argument("nonexistent vertex " + render(v));
      return 3 + 2 * (v.pos - 1);
    default: break;
  }
  throw std::logic_error("index_of_standalone_vertex: bad role");
}

}  // namespace ergolab::ladder
