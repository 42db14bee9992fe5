#pragma once

// The l-infinity example: T = T_1 (+) T_2 (+) ... with T_m = U - a_m V,
// a_m = 1 - 1/m. U and V are the rational spectral projectors of T_m, so
// every power and Cesaro mean is U + c V for an explicit scalar c.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergolab/core/cesaro_geometric.hpp"
#include "ergolab/core/parallel.hpp"
#include "ergolab/core/rational.hpp"
#include "ergolab/core/sparse_vector.hpp"

namespace ergolab::blockdiag {

struct Block2x2 {
  Rational a00{0}, a01{0}, a10{0}, a11{0};

  static Block2x2 identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }
  static Block2x2 zero() { return {}; }

  Block2x2& operator+=(const Block2x2& o) {
    a00 += o.a00;
    a01 += o.a01;
    a10 += o.a10;
    a11 += o.a11;
    return *this;
  }
  Block2x2& operator-=(const Block2x2& o) {
    a00 -= o.a00;
    a01 -= o.a01;
    a10 -= o.a10;
    a11 -= o.a11;
    return *this;
  }
  Block2x2& operator*=(const Rational& s) {
    a00 *= s;
    a01 *= s;
    a10 *= s;
    a11 *= s;
    return *this;
  }

  friend Block2x2 operator+(Block2x2 a, const Block2x2& b) { return a += b; }
  friend Block2x2 operator-(Block2x2 a, const Block2x2& b) { return a -= b; }
  friend Block2x2 operator*(const Rational& s, Block2x2 a) { return a *= s; }
  friend Block2x2 operator*(const Block2x2& a, const Block2x2& b) {
    return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
            a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
  }
  friend bool operator==(const Block2x2&, const Block2x2&) = default;

  // Operator norm on (R^2, sup): the largest absolute row sum.
  [[nodiscard]] Rational norm_inf() const {
    Rational r0 = a00.abs() + a01.abs();
    Rational r1 = a10.abs() + a11.abs();
    return r0 < r1 ? r1 : r0;
  }

  [[nodiscard]] bool is_nonnegative() const {
    return a00.sign() >= 0 && a01.sign() >= 0 && a10.sign() >= 0 && a11.sign() >= 0;
  }

  [[nodiscard]] std::pair<Rational, Rational> apply(const Rational& x0, const Rational& x1) const {
    return {a00 * x0 + a01 * x1, a10 * x0 + a11 * x1};
  }

  friend std::ostream& operator<<(std::ostream& os, const Block2x2& b) {
    return os << "[[" << b.a00 << ", " << b.a01 << "], [" << b.a10 << ", " << b.a11 << "]]";
  }
};

inline Block2x2 U() {
  const Rational h(1, 2);
  return {h, h, h, h};
}

inline Block2x2 V() {
  const Rational h(1, 2);
  return {h, -h, -h, h};
}

inline void check_block_index(std::uint64_t m, const char* who) {
  if (m == 0) throw std::invalid_argument(std::string(who) + ": block index m must be positive");
}

// a_m = 1 - 1/m.
inline Rational a_coeff(std::uint64_t m) {
  check_block_index(m, "a_coeff");
  return Rational(1) - Rational(1, m);
}

// (1/2) [[1/m, 2 - 1/m], [2 - 1/m, 1/m]], entered as displayed.
inline Block2x2 t_block(std::uint64_t m) {
  check_block_index(m, "t_block");
  const Rational inv(1, m);
  const Rational h(1, 2);
  const Rational off = h * (Rational(2) - inv);
  return {h * inv, off, off, h * inv};
}

// T_m^p = U + (-a_m)^p V.
inline Block2x2 t_block_power(std::uint64_t m, std::uint64_t p) {
  return U() + (-a_coeff(m)).pow(p) * V();
}

// (1/n) sum_{k<n} (T_m^p)^k = U + sigma V with sigma = cesaro_geometric(a_m, p, n).
inline Block2x2 block_cesaro(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  check_block_index(m, "block_cesaro");
  return U() + cesaro_geometric(a_coeff(m), p, n) * V();
}

// The same mean by repeated multiplication of the displayed matrix.
inline Block2x2 block_cesaro_literal(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p == 0) throw std::invalid_argument("block_cesaro_literal: n and p must be positive");
  const Block2x2 t = t_block(m);
  Block2x2 step = Block2x2::identity();
  for (std::uint64_t i = 0; i < p; ++i) step = step * t;
  Block2x2 power = Block2x2::identity();
  Block2x2 total = Block2x2::zero();
  for (std::uint64_t k = 0; k < n; ++k) {
    total += power;
    power = power * step;
  }
  return Rational(1, n) * total;
}

// b_{m,n} for the 2j-th power.
inline Rational b_coeff(std::uint64_t m, std::uint64_t n, std::uint64_t j) {
  check_block_index(m, "b_coeff");
  if (j == 0) throw std::invalid_argument("b_coeff: j must be positive");
  return cesaro_geometric(a_coeff(m), 2 * j, n);
}

// (1/n)(1 - a^{2jn}) / (1 - a^{2j}). Well defined since a_m < 1 for every m.
inline Rational b_coeff_closed(std::uint64_t m, std::uint64_t n, std::uint64_t j) {
  check_block_index(m, "b_coeff_closed");
  if (n == 0 || j == 0) throw std::invalid_argument("b_coeff_closed: n and j must be positive");
  const Rational a = a_coeff(m);
  return (Rational(1) - a.pow(2 * j * n)) / (Rational(n) * (Rational(1) - a.pow(2 * j)));
}

// Double-precision evaluation, used only as a cross-check of the exact value.
inline double b_coeff_float(std::uint64_t m, std::uint64_t n, std::uint64_t j) {
  check_block_index(m, "b_coeff_float");
  const double a = 1.0 - 1.0 / static_cast<double>(m);
  const double r = std::pow(a, 2.0 * static_cast<double>(j));
  if (r == 0.0) return 1.0 / static_cast<double>(n);
  return -std::expm1(static_cast<double>(n) * std::log(r)) / (static_cast<double>(n) * (1.0 - r));
}

struct Deviation {
  Rational value{0};
  std::uint64_t block = 0;  // an m attaining the maximum (smallest such)
};

// max_{m <= M} || block_cesaro(m, n, p) - U ||_inf. Since ||V||_inf = 1 this is
// max_m |sigma_m|, but the norm is taken of the matrix difference itself.
inline Deviation sup_deviation(std::uint64_t M, std::uint64_t n, std::uint64_t p, unsigned threads = 1) {
  if (M == 0) throw std::invalid_argument("sup_deviation: M must be positive");
  std::vector<Rational> per_block(M);
  parallel_for(M, threads, [&](std::uint64_t i) { per_block[i] = (block_cesaro(i + 1, n, p) - U()).norm_inf(); });
  Deviation out{per_block[0], 1};
  for (std::uint64_t i = 1; i < M; ++i) {
    if (out.value < per_block[i]) out = {per_block[i], i + 1};
  }
  return out;
}

// Applies A_n(T^{2j}) to the vector whose m-th block is (1, -1) and returns the
// coefficient of (1, -1) in each output block.
inline std::vector<Rational> witness_apply(std::uint64_t M, std::uint64_t n, std::uint64_t j, unsigned threads = 1) {
  if (M == 0 || j == 0) throw std::invalid_argument("witness_apply: M and j must be positive");
  std::vector<Rational> out(M);
  parallel_for(M, threads, [&](std::uint64_t i) {
    auto [y0, y1] = block_cesaro(i + 1, n, 2 * j).apply(Rational(1), Rational(-1));
    if (y1 != -y0) throw std::logic_error("witness_apply: output left the span of (1,-1)");
    out[i] = y0;
  });
  return out;
}

struct FixedCheck {
  bool passed = true;
  Rational max_power{0};  // max_m a_m^{2j}
  std::uint64_t block = 1;
  std::vector<std::uint64_t> violations;  // m with a_m^{2j} = 1
};

// The diagonal multiplication operator with entries a_m^{2j} has only the zero
// fixed point on blocks 1..M iff no entry equals 1.
inline FixedCheck multiplication_fixed_check(std::uint64_t M, std::uint64_t j) {
  if (M == 0 || j == 0) throw std::invalid_argument("multiplication_fixed_check: M and j must be positive");
  FixedCheck out;
  for (std::uint64_t m = 1; m <= M; ++m) {
    Rational v = a_coeff(m).pow(2 * j);
    if (v == Rational(1)) {
      out.passed = false;
      out.violations.push_back(m);
    }
    if (m == 1 || out.max_power < v) {
      out.max_power = v;
      out.block = m;
    }
  }
  return out;
}

// Blockwise p-th power of T acting on index-keyed vectors: block m occupies
// coordinates 2(m-1) and 2(m-1)+1.
struct BlockOperator {
  std::uint64_t power = 1;
  std::uint64_t block_count = 1;  // truncation M used by sup-type queries

  BlockOperator(std::uint64_t p, std::uint64_t M) : power(p), block_count(M) {
    if (p == 0 || M == 0) throw std::invalid_argument("BlockOperator: p and M must be positive");
  }

  [[nodiscard]] Block2x2 block(std::uint64_t m) const { return t_block_power(m, power); }

  [[nodiscard]] SparseVector<std::uint64_t> apply(const SparseVector<std::uint64_t>& x) const {
    std::vector<std::pair<std::uint64_t, Rational>> out;
    out.reserve(x.support_size() * 2);
    for (auto it = x.begin(); it != x.end();) {
      const std::uint64_t first = it->first & ~std::uint64_t{1};
      Rational x0 = x.at(first);
      Rational x1 = x.at(first + 1);
      while (it != x.end() && it->first <= first + 1) ++it;
      auto [y0, y1] = block(first / 2 + 1).apply(x0, x1);
      out.emplace_back(first, std::move(y0));
      out.emplace_back(first + 1, std::move(y1));
    }
    return SparseVector<std::uint64_t>::from_entries(std::move(out));
  }
};

}  // namespace ergolab::blockdiag
