#pragma once

// Closed-form Cesaro sums along orbits of ladder graphs.
//
// Every positive-weight path leaving a ladder vertex is fixed by two choices:
// the copy it enters and the rung it descends. Visit times and weights along
// such a path are explicit, so S = sum_{k<n} lambda^k T^{mk} e_u can be
// evaluated without materialising its support, which grows cubically in n.
// The per-vertex value is accumulated explicitly only where several paths
// overlap (low bottom positions and the sinks); above that band every bottom
// vertex is visited by exactly one path and its contribution is counted
// arithmetically.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "ergolab/core/parallel.hpp"
#include "ergolab/core/rational.hpp"
#include "ergolab/ladder/graphs.hpp"
#include "ergolab/ladder/vertex.hpp"

namespace ergolab::ladder {

struct OrbitCesaroExact {
  Rational sup_norm;         // ||A_n x||
  std::uint64_t support = 0;
};

struct OrbitCesaroFloat {
  double sup_norm = 0.0;
  std::uint64_t support = 0;
};

namespace detail {

// Weights are tracked in half-units: 1 -> 2, 1/2 -> 1, 2 -> 4.
struct SignPolicy {
  using value_type = std::int64_t;
  using magnitude_type = std::int64_t;
  int sign = 1;

  [[nodiscard]] value_type factor(std::uint64_t term, std::int64_t half_units) const {
    return (sign < 0 && (term & 1U)) ? -half_units : half_units;
  }
  static magnitude_type magnitude(value_type v) { return v < 0 ? -v : v; }
  static bool nonzero(value_type v) { return v != 0; }
};

struct ComplexPolicy {
  using value_type = std::complex<double>;
  using magnitude_type = double;
  std::vector<std::complex<double>> powers;  // lambda^k

  [[nodiscard]] value_type factor(std::uint64_t term, std::int64_t half_units) const {
    return powers[term] * static_cast<double>(half_units);
  }
  static magnitude_type magnitude(const value_type& v) { return std::abs(v); }
  static bool nonzero(const value_type& v) { return v != value_type{}; }
};

template <class Mag>
struct Partial {
  Mag best{};
  std::uint64_t support = 0;

  void offer(Mag m) {
    if (best < m) best = m;
  }
  void absorb(const Partial& o) {
    offer(o.best);
    support += o.support;
  }
};

struct TopOrigin {
  std::uint64_t copy;
  std::uint64_t first_rung;  // q0
  std::uint64_t time;        // arrival time at Top(copy, q0)
};

class Sampler {
 public:
  Sampler(std::uint64_t stride, std::uint64_t terms) : stride_(stride), horizon_(stride * (terms - 1)) {}

  [[nodiscard]] std::uint64_t horizon() const { return horizon_; }
  [[nodiscard]] bool sampled(std::uint64_t t) const { return t <= horizon_ && t % stride_ == 0; }
  [[nodiscard]] std::uint64_t term(std::uint64_t t) const { return t / stride_; }

  // Sampled times in [a, b], b clipped to the horizon.
  [[nodiscard]] std::uint64_t count(std::uint64_t a, std::uint64_t b) const {
    if (b > horizon_) b = horizon_;
    if (a > b) return 0;
    const std::uint64_t first = (a + stride_ - 1) / stride_;
    const std::uint64_t last = b / stride_;
    return last >= first ? last - first + 1 : 0;
  }

 private:
  std::uint64_t stride_;
  std::uint64_t horizon_;
};

inline std::uint64_t small_rung_position(std::uint64_t q) { return (std::uint64_t{1} << (q + 1)) - q - 2; }

template <class Policy>
class WaveAccumulator {
 public:
  using value_type = typename Policy::value_type;
  using Mag = typename Policy::magnitude_type;

  WaveAccumulator(const Policy& policy, const Sampler& sampler) : policy_(policy), sampler_(sampler) {
    // Above the first landing whose gap to its predecessor exceeds the horizon,
    // windows of distinct rungs cannot meet.
    isolated_from_ = 1;
    while ((std::uint64_t{1} << isolated_from_) - 2 <= sampler_.horizon()) ++isolated_from_;
    dense_limit_ = small_rung_position(isolated_from_);
  }

  // Rung descents and top-chain visits of one copy.
  [[nodiscard]] Partial<Mag> copy(const TopOrigin& origin) const {
    Partial<Mag> out;
    const std::uint64_t horizon = sampler_.horizon();
    if (origin.time > horizon) return out;
    if (std::uint64_t tops = sampler_.count(origin.time, horizon)) {
      out.support += tops;
      out.offer(magnitude_of(2));
    }
    std::vector<value_type> dense;
    std::vector<char> landing;
    for (std::uint64_t q = origin.first_rung;; ++q) {
      const std::uint64_t land_time = origin.time + (q - origin.first_rung) + 1;
      if (land_time > horizon) break;
      if (q < isolated_from_) {
        if (dense.empty()) init_dense(dense, landing, dense_limit_);
        // Rung weight 1/2 times the bottom product: 1 off landings, 1/2 on them.
        descend(dense, landing, small_rung_position(q), land_time, 1, 2);
      } else {
        const std::uint64_t visits = sampler_.count(land_time, horizon);
        const std::uint64_t on_landing = sampler_.sampled(land_time) ? 1 : 0;
        out.support += visits;
        if (visits > on_landing) {
          out.offer(magnitude_of(2));
        } else if (on_landing) {
          out.offer(magnitude_of(1));
        }
      }
    }
    if (!dense.empty()) collect(dense, out);
    return out;
  }

  // Orbit of a bottom vertex B(c, J): a single descent of unit initial mass.
  [[nodiscard]] Partial<Mag> bottom_start(const BigNat& landing) const {
    Partial<Mag> out;
    const std::uint64_t horizon = sampler_.horizon();
    const std::int64_t base = is_rung_landing(landing) ? 4 : 2;  // f(J) in half-units
    if (landing <= BigNat(dense_limit_) + horizon) {
      const auto top = static_cast<std::uint64_t>(landing);
      std::vector<value_type> dense;
      std::vector<char> marks;
      init_dense(dense, marks, top + 1);
      descend(dense, marks, top, 0, base / 2, base);
      collect(dense, out);
      return out;
    }
    // Window [J - H, J] lies where landings are more than H apart: at most one.
    const std::uint64_t visits = sampler_.count(0, horizon);
    std::uint64_t on_landing = 0;
    const std::uint64_t top_bit = boost::multiprecision::msb(landing);
    for (std::uint64_t q = top_bit - 1; q <= top_bit + 1; ++q) {
      BigNat jq = rung_position(q);
      if (jq <= landing && landing - jq <= horizon) {
        if (sampler_.sampled(static_cast<std::uint64_t>(landing - jq))) on_landing = 1;
      }
    }
    out.support += visits;
    if (visits > on_landing) {
      out.offer(magnitude_of(base));
    } else if (on_landing) {
      out.offer(magnitude_of(base / 2));
    }
    return out;
  }

  [[nodiscard]] Mag magnitude_of(std::int64_t half_units) const { return Policy::magnitude(policy_.factor(0, half_units)); }

 private:
  static void init_dense(std::vector<value_type>& dense, std::vector<char>& landing, std::uint64_t size) {
    dense.assign(size, value_type{});
    landing.assign(size, 0);
    for (std::uint64_t q = 1; q < 63; ++q) {
      const std::uint64_t j = small_rung_position(q);
      if (j >= size) break;
      landing[j] = 1;
    }
  }

  // Adds a descent from `top` reached at `start_time`; the visit weight is
  // `on_landing` half-units at landing positions and `off_landing` elsewhere
  // (the sink counts as off-landing).
  void descend(std::vector<value_type>& dense, const std::vector<char>& landing, std::uint64_t top,
               std::uint64_t start_time, std::int64_t on_landing, std::int64_t off_landing) const {
    const std::uint64_t horizon = sampler_.horizon();
    for (std::uint64_t d = 0; d <= top; ++d) {
      const std::uint64_t t = start_time + d;
      if (t > horizon) break;
      if (!sampler_.sampled(t)) continue;
      const std::uint64_t pos = top - d;
      const std::int64_t w = (pos > 0 && landing[pos]) ? on_landing : off_landing;
      dense[pos] += policy_.factor(sampler_.term(t), w);
    }
  }

  static void collect(const std::vector<value_type>& dense, Partial<Mag>& out) {
    for (const auto& v : dense) {
      if (Policy::nonzero(v)) {
        ++out.support;
        out.offer(Policy::magnitude(v));
      }
    }
  }

  const Policy& policy_;
  const Sampler& sampler_;
  std::uint64_t isolated_from_;
  std::uint64_t dense_limit_;
};

template <class Policy>
Partial<typename Policy::magnitude_type> orbit_partial(const LadderFamilyGraph& g, const LadderVertex& start,
                                                       const Policy& policy, const Sampler& sampler,
                                                       unsigned threads) {
  using Mag = typename Policy::magnitude_type;
  if (!g.contains(start)) throw std::invalid_argument("start vertex " + render(start) + " is not in " + g.graph.description());
  const std::uint64_t horizon = sampler.horizon();
  WaveAccumulator<Policy> acc(policy, sampler);
  Partial<Mag> total;
  std::vector<TopOrigin> origins;

  switch (start.role) {
    case Role::source:
    case Role::entry: {
      const bool from_source = start.role == Role::source;
      if (from_source) {
        total.support += 1;
        total.offer(acc.magnitude_of(2));
      }
      const std::uint64_t first_copy = from_source ? 0 : start.copy;
      const std::uint64_t first_time = from_source ? 1 : 0;
      if (g.is_combined()) {
        if (std::uint64_t entries = sampler.count(first_time, horizon)) {
          total.support += entries;
          total.offer(acc.magnitude_of(2));
        }
        for (std::uint64_t c = first_copy;; ++c) {
          const std::uint64_t t = first_time + (c - first_copy) + 1;
          if (t > horizon) break;
          origins.push_back({c, c + 1, t});
        }
      } else {
        total.support += 1;
        total.offer(acc.magnitude_of(2));
        origins.push_back({start.copy, start.copy + 1, 1});
      }
      break;
    }
    case Role::top:
      origins.push_back({start.copy, static_cast<std::uint64_t>(start.pos), 0});
      break;
    case Role::bottom:
      total.absorb(acc.bottom_start(start.pos));
      break;
    case Role::sink:
      total.support += 1;
      total.offer(acc.magnitude_of(2));
      break;
  }

  // One slot per copy keeps the reduction independent of the schedule.
  std::vector<Partial<Mag>> partials(origins.size());
  parallel_for(origins.size(), origins.size() < 64 ? 1 : threads,
               [&](std::uint64_t i) { partials[i] = acc.copy(origins[i]); });
  for (const auto& p : partials) total.absorb(p);
  return total;
}

}  // namespace detail

// ||A_n x|| and |supp A_n x| for A_n = (1/n) sum_{k<n} (sign * T^stride)^k and
// x = coefficient * e_start, exactly. `sign` must be +1 or -1.
inline OrbitCesaroExact orbit_cesaro_exact(const LadderFamilyGraph& g, const LadderVertex& start,
                                           std::uint64_t stride, std::uint64_t terms, int sign = 1,
                                           const Rational& coefficient = Rational(1), unsigned threads = 1) {
  if (stride == 0 || terms == 0) throw std::invalid_argument("orbit_cesaro_exact: stride and terms must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("orbit_cesaro_exact: sign must be +1 or -1");
  if (coefficient.is_zero()) return {Rational(0), 0};
  detail::SignPolicy policy{sign};
  detail::Sampler sampler(stride, terms);
  auto partial = detail::orbit_partial(g, start, policy, sampler, threads);
  return {Rational(partial.best, 2) * coefficient.abs() / Rational(terms), partial.support};
}

// Float path for a unimodular complex rotation lambda.
inline OrbitCesaroFloat orbit_cesaro_complex(const LadderFamilyGraph& g, const LadderVertex& start,
                                             std::uint64_t stride, std::uint64_t terms, std::complex<double> lambda,
                                             double coefficient = 1.0, unsigned threads = 1) {
  if (stride == 0 || terms == 0) throw std::invalid_argument("orbit_cesaro_complex: stride and terms must be positive");
  detail::ComplexPolicy policy;
  policy.powers.resize(terms);
  std::complex<double> p(1.0, 0.0);
  for (std::uint64_t k = 0; k < terms; ++k) {
    policy.powers[k] = p;
    p *= lambda;
  }
  detail::Sampler sampler(stride, terms);
  auto partial = detail::orbit_partial(g, start, policy, sampler, threads);
  return {partial.best / 2.0 * std::abs(coefficient) / static_cast<double>(terms), partial.support};
}

}  // namespace ergolab::ladder
