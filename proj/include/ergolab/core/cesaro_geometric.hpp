#pragma once

#include <cstdint>
#include <stdexcept>

#include "ergolab/core/rational.hpp"

namespace ergolab {

namespace detail {

inline void check_cesaro_geometric_args(const Rational& a, std::uint64_t p, std::uint64_t n) {
  if (a < Rational(0) || a > Rational(1)) {
    throw std::domain_error("cesaro_geometric: a must lie in [0,1], got " + a.to_fraction());
  }
  if (p == 0) throw std::domain_error("cesaro_geometric: p must be positive");
  if (n == 0) throw std::domain_error("cesaro_geometric: n must be positive");
}

}  // namespace detail

// (1/n) * sum_{k<n} (-a)^{p k}, evaluated through the geometric closed form.
inline Rational cesaro_geometric(const Rational& a, std::uint64_t p, std::uint64_t n) {
  detail::check_cesaro_geometric_args(a, p, n);
  Rational ratio = (-a).pow(p);
  if (ratio == Rational(1)) return Rational(1);
  return (Rational(1) - ratio.pow(n)) / ((Rational(1) - ratio) * Rational(n));
}

// Same quantity by literal summation; kept as an independent route.
inline Rational cesaro_geometric_sum(const Rational& a, std::uint64_t p, std::uint64_t n) {
  detail::check_cesaro_geometric_args(a, p, n);
  Rational ratio = (-a).pow(p);
  Rational term(1);
  Rational total(0);
  for (std::uint64_t k = 0; k < n; ++k) {
    total += term;
    term *= ratio;
  }
  return total / Rational(n);
}

}  // namespace ergolab
