#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergolab/core/sparse_vector.hpp"
#include "ergolab/ergodic/operator.hpp"

namespace ergolab {

// Explicit caps so that every sweep over an infinite graph terminates.
struct Budget {
  std::uint64_t max_support = 20'000'000;  // entries of T^k x or of the partial sum
  std::uint64_t max_steps = 1'000'000;     // applications of the base operator
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engine {
  automatic,   // structured shortcut when the operator offers one, else generic
  generic,     // running sparse pass
  structured,  // shortcut only; throws if unavailable
};

struct CesaroTrace {
  std::vector<CesaroPoint> records;
  std::string engine;
};

struct CesaroOptions {
  std::uint64_t stride = 1;  // average the powers of T^stride
  int sign = 1;              // lambda = sign, exact
  Engine engine = Engine::automatic;
  Budget budget{};
};

namespace detail {

inline void check_schedule(const std::vector<std::uint64_t>& schedule) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] == 0) throw std::invalid_argument("Cesaro schedule entries must be positive");
    if (i > 0 && schedule[i] <= schedule[i - 1]) {
      throw std::invalid_argument("Cesaro schedule must be strictly increasing");
    }
  }
}

inline void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("exact rotations are limited to lambda = +1 or -1");
}

// Runs S_k = sum_{i<k} (sign T^stride)^i x once, calling visit(n, S_n) at
// every scheduled n. Only T^{stride i} x and the partial sum are kept.
template <class K, class Scalar, class Step, class Visit>
void running_pass(BasicSparseVector<K, Scalar> power, const Step& step, std::uint64_t stride, const Scalar& sign,
                  const std::vector<std::uint64_t>& schedule, const Budget& budget, Visit&& visit) {
  BasicSparseVector<K, Scalar> sum;
  Scalar factor(1);
  std::uint64_t steps = 0;
  std::size_t next = 0;
  const std::uint64_t last = schedule.empty() ? 0 : schedule.back();
  for (std::uint64_t k = 0; k < last; ++k) {
    sum += power * factor;
    if (sum.support_size() > budget.max_support) {
      throw BudgetExceeded("Cesaro partial sum exceeded " + std::to_string(budget.max_support) + " entries at k=" +
                           std::to_string(k));
    }
    if (k + 1 == schedule[next]) {
      visit(k + 1, static_cast<const BasicSparseVector<K, Scalar>&>(sum));
      if (++next == schedule.size()) break;
    }
    for (std::uint64_t s = 0; s < stride && !power.empty(); ++s) {
      if (++steps > budget.max_steps) {
        throw BudgetExceeded("Cesaro sweep exceeded " + std::to_string(budget.max_steps) + " operator applications");
      }
      power = step(power);
    }
    if (power.support_size() > budget.max_support) {
      throw BudgetExceeded("orbit vector exceeded " + std::to_string(budget.max_support) + " entries");
    }
    factor = factor * sign;
  }
}

}  // namespace detail

// A_n x = (1/n) sum_{k<n} T^k x by one running pass.
template <class K>
SparseVector<K> cesaro_apply(const OperatorHandle<K>& op, const SparseVector<K>& x, std::uint64_t n,
                             const Budget& budget = {}) {
  if (n == 0) throw std::invalid_argument("cesaro_apply: n must be positive");
  SparseVector<K> out;
  detail::running_pass(x, op.apply, 1, Rational(1), {n}, budget,
                       [&](std::uint64_t, const SparseVector<K>& s) { out = s * Rational(1, n); });
  return out;
}

// Records (n, ||A_n x||, |supp A_n x|) for A_n = (1/n) sum_{k<n} (sign T^stride)^k.
template <class K>
CesaroTrace cesaro_trace(const OperatorHandle<K>& op, const SparseVector<K>& x,
                         const std::vector<std::uint64_t>& schedule, const CesaroOptions& opt = {}) {
  detail::check_schedule(schedule);
  detail::check_sign(opt.sign);
  if (opt.stride == 0) throw std::invalid_argument("cesaro_trace: stride must be positive");
  CesaroTrace trace;
  const bool use_shortcut = opt.engine == Engine::structured ||
                            (opt.engine == Engine::automatic && static_cast<bool>(op.exact_shortcut));
  if (use_shortcut) {
    if (!op.exact_shortcut) throw std::invalid_argument("structured engine unavailable for " + op.description);
    bool covered = true;
    for (std::uint64_t n : schedule) {
      auto point = op.exact_shortcut(x, opt.stride, n, opt.sign);
      if (!point) {
        covered = false;
        break;
      }
      trace.records.push_back(*point);
    }
    if (covered) {
      trace.engine = "structured";
      return trace;
    }
    if (opt.engine == Engine::structured) {
      throw std::invalid_argument("structured engine does not cover this input vector");
    }
    trace.records.clear();
  }
  trace.engine = "generic";
  detail::running_pass(x, op.apply, opt.stride, Rational(opt.sign), schedule, opt.budget,
                       [&](std::uint64_t n, const SparseVector<K>& s) {
                         trace.records.push_back({n, sup_norm(s) / Rational(n), s.support_size()});
                       });
  return trace;
}

struct ErgodicCheck {
  bool passed = false;
  Rational value{0};
  Rational threshold{0};
  std::string engine;
};

// ||A_n(T^m) x|| <= threshold, exactly.
template <class K>
ErgodicCheck power_mean_ergodic_check(const OperatorHandle<K>& op, const SparseVector<K>& x, std::uint64_t m,
                                      std::uint64_t n, const Rational& threshold, Engine engine = Engine::automatic,
                                      const Budget& budget = {}) {
  if (m == 0 || n == 0) throw std::invalid_argument("power_mean_ergodic_check: m and n must be positive");
  CesaroOptions opt;
  opt.stride = m;
  opt.engine = engine;
  opt.budget = budget;
  auto trace = cesaro_trace(op, x, {n}, opt);
  const Rational& v = trace.records.front().sup_norm;
  return {v <= threshold, v, threshold, trace.engine};
}

struct RotationCheck {
  bool passed = false;
  bool exact = false;
  std::optional<Rational> exact_value;  // set for lambda = +-1
  double value = 0.0;
  double threshold = 0.0;
  std::string engine;
};

// Modulus tolerance accepted for float-complex lambda.
inline constexpr double kUnitModulusTolerance = 1e-12;

// ||A_n(lambda T) x|| <= threshold. lambda = +-1 runs exactly against the
// rational threshold; other unimodular lambda run in double precision and
// compare against threshold.to_double(), so callers pass any slack they allow
// inside the threshold.
template <class K>
RotationCheck scalar_rotation_check(const OperatorHandle<K>& op, const SparseVector<K>& x,
                                    std::complex<double> lambda, std::uint64_t n, const Rational& threshold,
                                    Engine engine = Engine::automatic, const Budget& budget = {}) {
  if (n == 0) throw std::invalid_argument("scalar_rotation_check: n must be positive");
  if (std::abs(std::abs(lambda) - 1.0) > kUnitModulusTolerance) {
    throw std::invalid_argument("scalar_rotation_check: |lambda| must be 1");
  }
  RotationCheck out;
  out.threshold = threshold.to_double();
  if (lambda.imag() == 0.0 && (lambda.real() == 1.0 || lambda.real() == -1.0)) {
    CesaroOptions opt;
    opt.sign = lambda.real() > 0 ? 1 : -1;
    opt.engine = engine;
    opt.budget = budget;
    auto trace = cesaro_trace(op, x, {n}, opt);
    out.exact = true;
    out.exact_value = trace.records.front().sup_norm;
    out.value = out.exact_value->to_double();
    out.passed = *out.exact_value <= threshold;
    out.engine = trace.engine;
    return out;
  }
  std::optional<ComplexCesaroPoint> point;
  if (engine != Engine::generic && op.complex_shortcut) {
    point = op.complex_shortcut(x, 1, n, lambda);
    out.engine = "structured-float";
  } else if (engine == Engine::structured) {
    throw std::invalid_argument("structured engine unavailable for " + op.description);
  }
  if (!point && engine == Engine::structured) {
    throw std::invalid_argument("structured engine does not cover this input vector");
  }
  if (!point) {
    if (!op.complex_apply) throw std::invalid_argument("operator has no complex action: " + op.description);
    out.engine = "generic-float";
    double value = 0.0;
    detail::running_pass(to_complex(x), op.complex_apply, 1, lambda, {n}, budget,
                         [&](std::uint64_t m, const ComplexSparseVector<K>& s) {
                           value = sup_norm(s) / static_cast<double>(m);
                         });
    point = ComplexCesaroPoint{n, value, 0};
  }
  out.value = point->sup_norm;
  out.passed = out.value <= out.threshold;
  return out;
}

}  // namespace ergolab
