#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "ergolab/blockdiag/block.hpp"
#include "ergolab/core/sparse_vector.hpp"
#include "ergolab/graphop/c0_graph.hpp"
#include "ergolab/graphop/operators.hpp"
#include "ergolab/ladder/graphs.hpp"
#include "ergolab/ladder/orbit_waves.hpp"

namespace ergolab {

// One point of a Cesaro trace: ||A_n x|| and |supp A_n x|.
struct CesaroPoint {
  std::uint64_t n = 0;
  Rational sup_norm{0};
  std::uint64_t support = 0;
};

struct ComplexCesaroPoint {
  std::uint64_t n = 0;
  double sup_norm = 0.0;
  std::uint64_t support = 0;
};

// A bounded operator given by its action on finitely supported vectors.
//
// The optional shortcuts evaluate ||A_n((sign T^stride)) x|| without forming
// A_n x; they may decline (return nullopt) for inputs they do not cover.
template <class K>
struct OperatorHandle {
  using Vector = SparseVector<K>;
  using ComplexVector = ComplexSparseVector<K>;
  using ExactShortcut =
      std::function<std::optional<CesaroPoint>(const Vector&, std::uint64_t stride, std::uint64_t n, int sign)>;
  using ComplexShortcut = std::function<std::optional<ComplexCesaroPoint>(
      const Vector&, std::uint64_t stride, std::uint64_t n, std::complex<double> lambda)>;

  std::function<Vector(const Vector&)> apply;
  std::function<Vector(const Vector&)> adjoint_apply;  // empty if unavailable
  std::function<ComplexVector(const ComplexVector&)> complex_apply;
  std::string description;
  bool positive = false;
  ExactShortcut exact_shortcut;
  ComplexShortcut complex_shortcut;
};

template <class V>
OperatorHandle<V> graph_operator(const C0Graph<V>& g) {
  OperatorHandle<V> op;
  op.apply = [g](const SparseVector<V>& x) { return ergolab::apply(g, x); };
  op.adjoint_apply = [g](const SparseVector<V>& y) { return ergolab::apply_adjoint(g, y); };
  op.complex_apply = [g](const ComplexSparseVector<V>& x) { return ergolab::apply(g, x); };
  op.description = g.description();
  op.positive = true;
  return op;
}

// Graph adapter plus the closed-form orbit evaluator for multiples of unit
// vectors.
inline OperatorHandle<ladder::LadderVertex> ladder_operator(const ladder::LadderFamilyGraph& g,
                                                            unsigned threads = 1) {
  using ladder::LadderVertex;
  auto op = graph_operator(g.graph);
  op.exact_shortcut = [g, threads](const SparseVector<LadderVertex>& x, std::uint64_t stride, std::uint64_t n,
                                   int sign) -> std::optional<CesaroPoint> {
    if (x.support_size() != 1) return std::nullopt;
    const auto& [v, c] = *x.begin();
    auto r = ladder::orbit_cesaro_exact(g, v, stride, n, sign, c, threads);
    return CesaroPoint{n, r.sup_norm, r.support};
  };
  op.complex_shortcut = [g, threads](const SparseVector<LadderVertex>& x, std::uint64_t stride, std::uint64_t n,
                                     std::complex<double> lambda) -> std::optional<ComplexCesaroPoint> {
    if (x.support_size() != 1) return std::nullopt;
    const auto& [v, c] = *x.begin();
    auto r = ladder::orbit_cesaro_complex(g, v, stride, n, lambda, c.to_double(), threads);
    return ComplexCesaroPoint{n, r.sup_norm, r.support};
  };
  return op;
}

// S = T^m, built by composing apply. Shortcuts are rescaled in stride.
template <class K>
OperatorHandle<K> power_operator(const OperatorHandle<K>& base, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("power_operator: m must be positive");
  OperatorHandle<K> op;
  op.apply = [base, m](SparseVector<K> x) {
    for (std::uint64_t i = 0; i < m && !x.empty(); ++i) x = base.apply(x);
    return x;
  };
  if (base.adjoint_apply) {
    op.adjoint_apply = [base, m](SparseVector<K> y) {
      for (std::uint64_t i = 0; i < m && !y.empty(); ++i) y = base.adjoint_apply(y);
      return y;
    };
  }
  if (base.complex_apply) {
    op.complex_apply = [base, m](ComplexSparseVector<K> x) {
      for (std::uint64_t i = 0; i < m && !x.empty(); ++i) x = base.complex_apply(x);
      return x;
    };
  }
  op.description = base.description + " ^" + std::to_string(m);
  op.positive = base.positive;
  if (base.exact_shortcut) {
    op.exact_shortcut = [base, m](const SparseVector<K>& x, std::uint64_t stride, std::uint64_t n, int sign) {
      return base.exact_shortcut(x, stride * m, n, sign);
    };
  }
  if (base.complex_shortcut) {
    op.complex_shortcut = [base, m](const SparseVector<K>& x, std::uint64_t stride, std::uint64_t n,
                                    std::complex<double> lambda) {
      return base.complex_shortcut(x, stride * m, n, lambda);
    };
  }
  return op;
}

// -T. Not positive.
template <class K>
OperatorHandle<K> negated_operator(const OperatorHandle<K>& base) {
  OperatorHandle<K> op;
  op.apply = [base](const SparseVector<K>& x) { return base.apply(x) * Rational(-1); };
  if (base.adjoint_apply) {
    op.adjoint_apply = [base](const SparseVector<K>& y) { return base.adjoint_apply(y) * Rational(-1); };
  }
  if (base.complex_apply) {
    op.complex_apply = [base](const ComplexSparseVector<K>& x) {
      return base.complex_apply(x) * std::complex<double>(-1.0, 0.0);
    };
  }
  op.description = "-(" + base.description + ")";
  op.positive = false;
  if (base.exact_shortcut) {
    op.exact_shortcut = [base](const SparseVector<K>& x, std::uint64_t stride, std::uint64_t n, int sign) {
      // (-T)^{stride k} = (-1)^{stride k} T^{stride k}.
      return base.exact_shortcut(x, stride, n, stride % 2 == 1 ? -sign : sign);
    };
  }
  return op;
}

inline OperatorHandle<std::uint64_t> block_operator(const blockdiag::BlockOperator& b) {
  OperatorHandle<std::uint64_t> op;
  op.apply = [b](const SparseVector<std::uint64_t>& x) { return b.apply(x); };
  // Every block is symmetric, so the adjoint acts by the same matrices.
  op.adjoint_apply = op.apply;
  op.description = "block-diagonal T^" + std::to_string(b.power);
  op.positive = true;
  return op;
}

}  // namespace ergolab
