#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ergolab {

// Arbitrary-precision rational number, always stored in lowest terms with a
// positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)

  template <std::unsigned_integral I>
  Rational(I value) : q_(static_cast<unsigned long>(value)) {}  // NOLINT(implicit)

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  template <std::integral A, std::integral B>
  Rational(A num, B den) : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p", "p/q" and finite decimals such as "-0.125".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    try {
      if (auto slash = s.find('/'); slash != std::string::npos) {
        return Rational(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
      }
      if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
        if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
        if (digits.front() == '+') digits.erase(0, 1);
        return Rational(mpz_class(digits, 10), den);
      }
      if (s.front() == '+') s.erase(0, 1);
      return Rational(mpz_class(s, 10), mpz_class(1));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    }
  }

  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  // "p/q", denominator always printed.
  [[nodiscard]] std::string to_fraction() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  // Decimal rendering derived from the exact value, rounded half away from
  // zero to `digits` places; trailing zeros trimmed but one place kept.
  [[nodiscard]] std::string to_decimal(unsigned digits = 12) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class num = ::abs(q_.get_num()) * scale * 2 + q_.get_den();
    mpz_class den = q_.get_den() * 2;
    mpz_class scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string body = scaled.get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string whole = body.substr(0, body.size() - digits);
    std::string frac = body.substr(body.size() - digits);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    if (frac.empty()) frac = "0";
    bool negative = sign() < 0 && (scaled != 0);
    return (negative ? "-" : "") + whole + "." + frac;
  }

  [[nodiscard]] Rational abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
  }

  [[nodiscard]] Rational pow(std::uint64_t e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    Rational r;
    r.q_.get_num() = n;
    r.q_.get_den() = d;  // already coprime
    return r;
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_fraction(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace ergolab
