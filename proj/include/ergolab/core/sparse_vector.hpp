#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ergolab/core/rational.hpp"

namespace ergolab {

// Magnitude and zero test per scalar type. Exact scalars report exact
// magnitudes; the complex float path reports doubles.
template <class Scalar>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  using magnitude_type = Rational;
  static magnitude_type magnitude(const Rational& s) { return s.abs(); }
  static bool is_zero(const Rational& s) { return s.is_zero(); }
};

template <>
struct scalar_traits<std::complex<double>> {
  using magnitude_type = double;
  static magnitude_type magnitude(const std::complex<double>& s) { return std::abs(s); }
  static bool is_zero(const std::complex<double>& s) { return s == std::complex<double>{}; }
};

template <class Scalar>
using magnitude_t = typename scalar_traits<Scalar>::magnitude_type;

// Finitely supported vector over an ordered key set. Entries are kept sorted
// by key with no stored zeros, so equality is structural.
template <class Key, class Scalar = Rational>
class BasicSparseVector {
 public:
  using key_type = Key;
  using scalar_type = Scalar;
  using entry_type = std::pair<Key, Scalar>;
  using const_iterator = typename std::vector<entry_type>::const_iterator;

  BasicSparseVector() = default;

  // Sorts, sums duplicate keys and drops zeros.
  static BasicSparseVector from_entries(std::vector<entry_type> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const entry_type& a, const entry_type& b) { return a.first < b.first; });
    BasicSparseVector out;
    out.entries_.reserve(entries.size());
    for (auto& e : entries) {
      if (!out.entries_.empty() && !(out.entries_.back().first < e.first)) {
        out.entries_.back().second += e.second;
      } else {
        if (!out.entries_.empty() && scalar_traits<Scalar>::is_zero(out.entries_.back().second)) {
          out.entries_.pop_back();
        }
        out.entries_.push_back(std::move(e));
      }
    }
    if (!out.entries_.empty() && scalar_traits<Scalar>::is_zero(out.entries_.back().second)) {
      out.entries_.pop_back();
    }
    return out;
  }

  static BasicSparseVector unit(Key key, Scalar value = Scalar(1)) {
    BasicSparseVector out;
    if (!scalar_traits<Scalar>::is_zero(value)) out.entries_.emplace_back(std::move(key), std::move(value));
    return out;
  }

  [[nodiscard]] Scalar at(const Key& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const entry_type& e, const Key& k) { return e.first < k; });
    if (it != entries_.end() && !(key < it->first)) return it->second;
    return Scalar(0);
  }

  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t support_size() const { return entries_.size(); }
  [[nodiscard]] const std::vector<entry_type>& entries() const { return entries_; }
  [[nodiscard]] const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] const_iterator end() const { return entries_.end(); }

  BasicSparseVector& operator+=(const BasicSparseVector& o) {
    *this = merge(*this, o, Scalar(1));
    return *this;
  }
  BasicSparseVector& operator-=(const BasicSparseVector& o) {
    *this = merge(*this, o, Scalar(-1));
    return *this;
  }
  BasicSparseVector& operator*=(const Scalar& s) {
    if (scalar_traits<Scalar>::is_zero(s)) {
      entries_.clear();
    } else {
      for (auto& e : entries_) e.second *= s;
    }
    return *this;
  }

  friend BasicSparseVector operator+(const BasicSparseVector& a, const BasicSparseVector& b) {
    return merge(a, b, Scalar(1));
  }
  friend BasicSparseVector operator-(const BasicSparseVector& a, const BasicSparseVector& b) {
    return merge(a, b, Scalar(-1));
  }
  friend BasicSparseVector operator*(const Scalar& s, BasicSparseVector v) { return v *= s; }
  friend BasicSparseVector operator*(BasicSparseVector v, const Scalar& s) { return v *= s; }

  friend bool operator==(const BasicSparseVector& a, const BasicSparseVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  static BasicSparseVector merge(const BasicSparseVector& a, const BasicSparseVector& b,
                                 const Scalar& b_factor) {
    BasicSparseVector out;
    out.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
      if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
        out.entries_.push_back(*i++);
      } else if (i == a.entries_.end() || j->first < i->first) {
        out.entries_.emplace_back(j->first, j->second * b_factor);
        ++j;
      } else {
        Scalar s = i->second + j->second * b_factor;
        if (!scalar_traits<Scalar>::is_zero(s)) out.entries_.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<entry_type> entries_;
};

template <class Key>
using SparseVector = BasicSparseVector<Key, Rational>;

template <class Key>
using ComplexSparseVector = BasicSparseVector<Key, std::complex<double>>;

template <class Key, class Scalar>
magnitude_t<Scalar> sup_norm(const BasicSparseVector<Key, Scalar>& x) {
  magnitude_t<Scalar> best(0);
  for (const auto& [key, value] : x) {
    auto m = scalar_traits<Scalar>::magnitude(value);
    if (best < m) best = m;
  }
  return best;
}

template <class Key, class Scalar>
magnitude_t<Scalar> l1_norm(const BasicSparseVector<Key, Scalar>& y) {
  magnitude_t<Scalar> total(0);
  for (const auto& [key, value] : y) total += scalar_traits<Scalar>::magnitude(value);
  return total;
}

// Bilinear pairing sum_i x_i y_i.
template <class Key, class Scalar>
Scalar dot(const BasicSparseVector<Key, Scalar>& x, const BasicSparseVector<Key, Scalar>& y) {
  Scalar total(0);
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      total += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return total;
}

// Entrywise absolute value.
template <class Key>
SparseVector<Key> abs(const SparseVector<Key>& x) {
  std::vector<std::pair<Key, Rational>> entries;
  entries.reserve(x.support_size());
  for (const auto& [k, v] : x) entries.emplace_back(k, v.abs());
  return SparseVector<Key>::from_entries(std::move(entries));
}

template <class Key>
bool is_nonnegative(const SparseVector<Key>& x) {
  return std::all_of(x.begin(), x.end(), [](const auto& e) { return e.second.sign() >= 0; });
}

template <class Key>
ComplexSparseVector<Key> to_complex(const SparseVector<Key>& x) {
  std::vector<std::pair<Key, std::complex<double>>> entries;
  entries.reserve(x.support_size());
  for (const auto& [k, v] : x) entries.emplace_back(k, std::complex<double>(v.to_double(), 0.0));
  return ComplexSparseVector<Key>::from_entries(std::move(entries));
}

}  // namespace ergolab
