#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergolab/core/sparse_vector.hpp"
#include "ergolab/graphop/operators.hpp"
#include "ergolab/ladder/graphs.hpp"

namespace ergolab {

struct WitnessMatrix {
  std::uint64_t max_copy = 0;      // K
  std::uint64_t max_exponent = 0;  // M
  // entries[m][k] = (T^{2^{m+2}} e_s)_{V(k)}
  std::vector<std::vector<Rational>> entries;
  bool matches_predicate = true;
  bool lower_triangular = true;  // 1 iff k <= m, 0 otherwise
  std::string conclusion;
};

// Orbit of the source sampled at the sinks along n = 2^{m+2}, in one sweep.
inline WitnessMatrix weak_compactness_witness(const ladder::LadderFamilyGraph& g, std::uint64_t K,
                                              std::uint64_t M) {
  using ladder::LadderVertex;
  if (!g.is_combined()) throw std::invalid_argument("weak_compactness_witness needs the combined graph");
  if (M > 12) throw std::invalid_argument("weak_compactness_witness: M > 12 exceeds the sweep budget");
  WitnessMatrix out;
  out.max_copy = K;
  out.max_exponent = M;
  out.entries.assign(M + 1, std::vector<Rational>(K + 1, Rational(0)));
  const std::uint64_t last = std::uint64_t{1} << (M + 2);
  std::uint64_t next_m = 0;
  power_sweep(g.graph, SparseVector<LadderVertex>::unit(LadderVertex::source()), last,
              [&](std::uint64_t n, const SparseVector<LadderVertex>& x) {
                if (next_m > M || n != (std::uint64_t{1} << (next_m + 2))) return;
                for (std::uint64_t k = 0; k <= K; ++k) {
                  const Rational value = x.at(LadderVertex::sink(k));
                  out.entries[next_m][k] = value;
                  if (value != Rational(ladder::orbit_predicate(g.kind, k, n))) out.matches_predicate = false;
                  if (value != Rational(k <= next_m ? 1 : 0)) out.lower_triangular = false;
                }
                ++next_m;
              });
  if (out.lower_triangular) {
    out.conclusion = "every tested sink V(k) reaches 1 once m >= k and stays there, so each pointwise cluster "
                     "point of the orbit equals 1 on V(0..K): it is not in c0 on the tested window";
  } else {
    out.conclusion = "pattern deviates from the lower-triangular ones matrix";
  }
  return out;
}

// max_{0 <= n <= H} ||T^n |x|||, a lower bound for the orbit renorm of x.
template <class V>
Rational renorm_estimate(const C0Graph<V>& g, const SparseVector<V>& x, std::uint64_t horizon) {
  Rational best(0);
  power_sweep(g, abs(x), horizon, [&](std::uint64_t, const SparseVector<V>& y) {
    Rational s = sup_norm(y);
    if (best < s) best = s;
  });
  return best;
}

inline Rational renorm_estimate(const ladder::LadderFamilyGraph& g, const SparseVector<ladder::LadderVertex>& x,
                                std::uint64_t horizon) {
  return renorm_estimate(g.graph, x, horizon);
}

}  // namespace ergolab
