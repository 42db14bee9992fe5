#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/core/sparse_vector.hpp"
#include "ergolab/graphop/c0_graph.hpp"

namespace ergolab {

template <class Scalar>
Scalar scalar_from(const Rational& r);

template <>
inline Rational scalar_from<Rational>(const Rational& r) { return r; }

template <>
inline std::complex<double> scalar_from<std::complex<double>>(const Rational& r) {
  return {r.to_double(), 0.0};
}

// (Tx)_v = sum_u x_u w(u,v).
template <class V, class Scalar>
BasicSparseVector<V, Scalar> apply(const C0Graph<V>& g, const BasicSparseVector<V, Scalar>& x) {
  std::vector<std::pair<V, Scalar>> out;
  out.reserve(x.support_size() * 2);
  for (const auto& [u, xu] : x) {
    for (auto& e : g.successors(u)) out.emplace_back(std::move(e.to), xu * scalar_from<Scalar>(e.weight));
  }
  return BasicSparseVector<V, Scalar>::from_entries(std::move(out));
}

// (T*y)_u = sum_v y_v w(u,v).
template <class V, class Scalar>
BasicSparseVector<V, Scalar> apply_adjoint(const C0Graph<V>& g, const BasicSparseVector<V, Scalar>& y) {
  std::vector<std::pair<V, Scalar>> out;
  out.reserve(y.support_size() * 2);
  for (const auto& [v, yv] : y) {
    for (auto& e : g.predecessors(v)) out.emplace_back(std::move(e.to), yv * scalar_from<Scalar>(e.weight));
  }
  return BasicSparseVector<V, Scalar>::from_entries(std::move(out));
}

template <class V, class Scalar>
BasicSparseVector<V, Scalar> power_apply(const C0Graph<V>& g, BasicSparseVector<V, Scalar> x,
                                         std::uint64_t n) {
  for (std::uint64_t k = 0; k < n && !x.empty(); ++k) x = ergolab::apply(g, x);
  return x;
}

// Calls visit(k, T^k x) for k = 0..n_max in one pass.
template <class V, class Scalar, class Visitor>
void power_sweep(const C0Graph<V>& g, BasicSparseVector<V, Scalar> x, std::uint64_t n_max,
                 Visitor&& visit) {
  for (std::uint64_t k = 0;; ++k) {
    visit(k, static_cast<const BasicSparseVector<V, Scalar>&>(x));
    if (k == n_max) break;
    x = ergolab::apply(g, x);
  }
}

// 1_{E_N}.
template <class V>
SparseVector<V> truncation_indicator(const C0Graph<V>& g, std::uint64_t n) {
  std::vector<std::pair<V, Rational>> entries;
  entries.reserve(n);
  for (auto& v : g.truncation(n)) entries.emplace_back(std::move(v), Rational(1));
  return SparseVector<V>::from_entries(std::move(entries));
}

// ||T 1_{E_N}||, the truncated lower bound for ||T||.
template <class V>
Rational operator_norm_truncated(const C0Graph<V>& g, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("operator_norm_truncated: N must be positive");
  return sup_norm(ergolab::apply(g, truncation_indicator(g, n)));
}

// ||T^k 1_{E_N}|| for k = 1..n_max in one sweep; element k-1 holds power k.
template <class V>
std::vector<Rational> power_norm_profile(const C0Graph<V>& g, std::uint64_t n_max, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("power_norm_profile: N must be positive");
  std::vector<Rational> out;
  out.reserve(n_max);
  power_sweep(g, truncation_indicator(g, n), n_max, [&](std::uint64_t k, const SparseVector<V>& x) {
    if (k > 0) out.push_back(sup_norm(x));
  });
  return out;
}

template <class V>
Rational power_norm_truncated(const C0Graph<V>& g, std::uint64_t power, std::uint64_t n) {
  if (power == 0) throw std::invalid_argument("power_norm_truncated: n must be positive");
  return power_norm_profile(g, power, n).back();
}

// All positive-weight paths of exactly `length` edges from u to v, by
// depth-first expansion of successor lists. Exponential; meant as an oracle.
template <class V>
std::vector<Path<V>> enumerate_paths(const C0Graph<V>& g, const V& u, const V& v, std::uint64_t length) {
  std::vector<Path<V>> found;
  Path<V> current;
  current.vertices.push_back(u);
  std::function<void(std::uint64_t)> expand = [&](std::uint64_t remaining) {
    const V& here = current.vertices.back();
    if (remaining == 0) {
      if (!(here < v) && !(v < here)) found.push_back(current);
      return;
    }
    for (const auto& e : g.successors(here)) {
      Rational saved = current.weight;
      current.weight *= e.weight;
      current.vertices.push_back(e.to);
      expand(remaining - 1);
      current.vertices.pop_back();
      current.weight = saved;
    }
  };
  expand(length);
  return found;
}

struct PathCount {
  std::uint64_t count = 0;
  Rational max_weight{0};

  friend bool operator==(const PathCount&, const PathCount&) = default;
};

namespace detail {

inline void merge_path_count(PathCount& into, const PathCount& from, const Rational& weight) {
  if (into.count > std::numeric_limits<std::uint64_t>::max() - from.count) {
    throw std::overflow_error("path count exceeds 64 bits");
  }
  into.count += from.count;
  Rational w = from.max_weight * weight;
  if (into.max_weight < w) into.max_weight = w;
}

}  // namespace detail

// Number of positive-weight length-n paths that end at v and start in E_N,
// with the largest single-path weight. Backward dynamic programming over
// (vertex, remaining length).
template <class V>
PathCount count_paths_to(const C0Graph<V>& g, const V& v, std::uint64_t length, std::uint64_t n) {
  std::map<V, PathCount> layer{{v, PathCount{1, Rational(1)}}};
  for (std::uint64_t step = 0; step < length; ++step) {
    std::map<V, PathCount> next;
    for (const auto& [w, pc] : layer) {
      for (const auto& e : g.predecessors(w)) detail::merge_path_count(next[e.to], pc, e.weight);
    }
    layer = std::move(next);
  }
  auto starts = g.truncation(n);
  std::set<V> start_set(starts.begin(), starts.end());
  PathCount total;
  for (const auto& [u, pc] : layer) {
    if (start_set.count(u)) {
      total.count += pc.count;
      if (total.max_weight < pc.max_weight) total.max_weight = pc.max_weight;
    }
  }
  return total;
}

// Forward version of count_paths_to for every endpoint at once: entry v holds
// the count and maximal weight of length-n paths from E_N ending at v.
template <class V>
std::map<V, PathCount> path_count_profile(const C0Graph<V>& g, std::uint64_t length, std::uint64_t n) {
  std::map<V, PathCount> layer;
  for (auto& u : g.truncation(n)) layer[u] = PathCount{1, Rational(1)};
  for (std::uint64_t step = 0; step < length; ++step) {
    std::map<V, PathCount> next;
    for (const auto& [u, pc] : layer) {
      for (const auto& e : g.successors(u)) detail::merge_path_count(next[e.to], pc, e.weight);
    }
    layer = std::move(next);
  }
  return layer;
}

template <class V>
struct C0Report {
  std::uint64_t truncation = 0;
  Rational bound{0};
  Rational max_column_sum{0};
  std::optional<V> max_column;
  std::size_t max_out_degree = 0;
  bool columns_bounded = true;
  bool oracles_consistent = true;
  std::vector<std::string> violations;

  [[nodiscard]] bool passed() const { return columns_bounded && oracles_consistent; }
};

// Scans E_N for condition (b) (column sums against `bound`), the out-degree,
// and mutual consistency of the successor and predecessor oracles.
template <class V, class Render>
C0Report<V> verify_c0_conditions(const C0Graph<V>& g, std::uint64_t n, const Rational& bound,
                                 Render&& render) {
  C0Report<V> report;
  report.truncation = n;
  report.bound = bound;
  auto contains = [](const std::vector<Edge<V>>& edges, const V& to, const Rational& w) {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge<V>& e) {
      return !(e.to < to) && !(to < e.to) && e.weight == w;
    });
  };
  for (const auto& u : g.truncation(n)) {
    auto succ = g.successors(u);
    auto pred = g.predecessors(u);
    report.max_out_degree = std::max(report.max_out_degree, succ.size());
    Rational column(0);
    for (const auto& e : pred) column += e.weight;
    if (!report.max_column || report.max_column_sum < column) {
      report.max_column_sum = column;
      report.max_column = u;
    }
    if (column > bound) {
      report.columns_bounded = false;
      report.violations.push_back("column " + render(u) + " sums to " + column.to_fraction() +
                                  " > " + bound.to_fraction());
    }
    for (const auto& e : succ) {
      if (e.weight.sign() <= 0) {
        report.oracles_consistent = false;
        report.violations.push_back("edge " + render(u) + "->" + render(e.to) + " has non-positive weight");
      }
      if (!contains(g.predecessors(e.to), u, e.weight)) {
        report.oracles_consistent = false;
        report.violations.push_back("edge " + render(u) + "->" + render(e.to) + " (" + e.weight.to_fraction() +
                                    ") missing from predecessors of " + render(e.to));
      }
    }
    for (const auto& e : pred) {
      if (!contains(g.successors(e.to), u, e.weight)) {
        report.oracles_consistent = false;
        report.violations.push_back("edge " + render(e.to) + "->" + render(u) + " (" + e.weight.to_fraction() +
                                    ") missing from successors of " + render(e.to));
      }
    }
  }
  return report;
}

template <class V>
C0Report<V> verify_c0_conditions(const C0Graph<V>& g, std::uint64_t n, const Rational& bound) {
  return verify_c0_conditions(g, n, bound, [](const V& v) {
    std::ostringstream os;
    os << v;
    return os.str();
  });
}

}  // namespace ergolab
