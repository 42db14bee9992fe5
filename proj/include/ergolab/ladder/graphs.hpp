#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergolab/graphop/c0_graph.hpp"
#include "ergolab/ladder/vertex.hpp"

namespace ergolab::ladder {

enum class Kind { g0, gk, combined };

inline std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::g0: return "g0";
    case Kind::gk: return "gk";
    case Kind::combined: return "combined";
  }
  return "?";
}

using LadderGraph = C0Graph<LadderVertex>;

// A ladder graph together with the structural metadata the diagnostics rely
// on: which copies exist and where the entry chain lives.
struct LadderFamilyGraph {
  Kind kind;
  std::uint64_t k;  // copy index for G0/Gk, 0 for combined
  LadderGraph graph;

  [[nodiscard]] bool is_combined() const { return kind == Kind::combined; }

  [[nodiscard]] bool contains(const LadderVertex& v) const {
    if (is_combined()) return v.role != Role::top || v.pos > v.copy;
    if (v.role == Role::source || v.copy != k) return false;
    if (v.role == Role::top) return v.pos > k;
    if (v.role == Role::bottom) return v.pos >= 1;
    return true;
  }

  // Start vertex of the orbit studied in the text: s for the combined graph,
  // o for a standalone copy.
  [[nodiscard]] LadderVertex origin() const {
    return is_combined() ? LadderVertex::source() : LadderVertex::entry(k);
  }

  [[nodiscard]] BigNat index_of(const LadderVertex& v) const {
    return is_combined() ? index_of_vertex(v) : index_of_standalone_vertex(k, v);
  }
};

namespace detail {

inline std::vector<Edge<LadderVertex>> ladder_successors(bool combined, std::uint64_t k,
                                                         const LadderVertex& v) {
  using LV = LadderVertex;
  switch (v.role) {
    case Role::source:
      if (!combined) break;
      return {{LV::entry(0), Rational(1)}};
    case Role::entry:
      if (combined) return {{LV::entry(v.copy + 1), Rational(1)}, {LV::top(v.copy, v.copy + 1), Rational(1)}};
      if (v.copy != k) break;
      return {{LV::top(k, k + 1), Rational(1)}};
    case Role::top: {
      if (!combined && v.copy != k) break;
      const auto n = static_cast<std::uint64_t>(v.pos);
      return {{LV::top(v.copy, v.pos + 1), Rational(1)}, {LV::bottom(v.copy, rung_position(n)), Rational(1, 2)}};
    }
    case Role::bottom:
      if (!combined && v.copy != k) break;
      if (v.pos == 1) return {{LV::sink(v.copy), bottom_weight(v.pos)}};
      return {{LV::bottom(v.copy, v.pos - 1), bottom_weight(v.pos)}};
    case Role::sink:
      if (!combined && v.copy != k) break;
      return {};
  }
  throw std::invalid_argument("vertex " + render(v) + " is not in this ladder graph");
}

inline std::vector<Edge<LadderVertex>> ladder_predecessors(bool combined, std::uint64_t k,
                                                           const LadderVertex& v) {
  using LV = LadderVertex;
  switch (v.role) {
    case Role::source:
      if (!combined) break;
      return {};
    case Role::entry:
      if (!combined) {
        if (v.copy != k) break;
        return {};
      }
      if (v.copy == 0) return {{LV::source(), Rational(1)}};
      return {{LV::entry(v.copy - 1), Rational(1)}};
    case Role::top:
      if (!combined && v.copy != k) break;
      if (v.pos == v.copy + 1) return {{LV::entry(v.copy), Rational(1)}};
      return {{LV::top(v.copy, v.pos - 1), Rational(1)}};
    case Role::bottom: {
      if (!combined && v.copy != k) break;
      std::vector<Edge<LadderVertex>> out{{LV::bottom(v.copy, v.pos + 1), bottom_weight(v.pos + 1)}};
      if (auto q = rung_index(v.pos); q && *q >= v.copy + 1) out.push_back({LV::top(v.copy, *q), Rational(1, 2)});
      return out;
    }
    case Role::sink:
      if (!combined && v.copy != k) break;
      return {{LV::bottom(v.copy, 1), Rational(2)}};
  }
  throw std::invalid_argument("vertex " + render(v) + " is not in this ladder graph");
}

}  // namespace detail

// Standalone copy G_k: the ladder with rungs s_1..s_k removed and o wired
// straight to s_{k+1}. k = 0 gives G_0.
inline LadderFamilyGraph make_gk(std::uint64_t k) {
  LadderGraph graph(
      [k](const LadderVertex& v) { return detail::ladder_successors(false, k, v); },
      [k](const LadderVertex& v) { return detail::ladder_predecessors(false, k, v); },
      [k](std::uint64_t i) { return enumerate_standalone_vertex(k, i); },
      k == 0 ? "G_0 ladder" : "G_" + std::to_string(k) + " ladder copy");
  return {k == 0 ? Kind::g0 : Kind::gk, k, std::move(graph)};
}

inline LadderFamilyGraph make_g0() { return make_gk(0); }

// All copies G_k joined through the entry chain s -> o_0 -> o_1 -> ...
inline LadderFamilyGraph make_counterexample() {
  LadderGraph graph([](const LadderVertex& v) { return detail::ladder_successors(true, 0, v); },
                    [](const LadderVertex& v) { return detail::ladder_predecessors(true, 0, v); },
                    [](std::uint64_t i) { return enumerate_vertex(i); }, "combined ladder counterexample");
  return {Kind::combined, 0, std::move(graph)};
}

inline LadderFamilyGraph make_ladder(Kind kind, std::uint64_t k = 0) {
  switch (kind) {
    case Kind::g0: return make_g0();
    case Kind::gk:
      if (k == 0) throw std::invalid_argument("make_ladder: G_k needs k >= 1");
      return make_gk(k);
    case Kind::combined: return make_counterexample();
  }
  throw std::invalid_argument("make_ladder: bad kind");
}

// Closed-form value of the orbit of the origin at the sink of copy k after n
// steps. Standalone G_k: 1 iff n = 2^{m+2} - k - 1 with m >= k. Combined: 1
// iff n = 2^{m+2} with m >= k.
inline int orbit_predicate(Kind kind, std::uint64_t k, std::uint64_t n) {
  const std::uint64_t shifted = kind == Kind::combined ? n : n + k + 1;
  if (shifted == 0 || (shifted & (shifted - 1)) != 0) return 0;
  const auto exponent = static_cast<std::uint64_t>(std::countr_zero(shifted));
  return exponent >= k + 2 ? 1 : 0;
}

}  // namespace ergolab::ladder
