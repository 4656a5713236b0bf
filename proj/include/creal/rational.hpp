#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "creal/error.hpp"

namespace cra {

using Int = boost::multiprecision::cpp_int;

// Exact fraction, always normalized: denominator > 0, gcd(|num|, den) = 1,
// zero is 0/1. Immutable after construction.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(int n) : num_(n), den_(1) {}
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int num, Int den);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  // Throws DivisionByZero on b = 0.
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }

  // Exact total order by cross-multiplication (denominators positive).
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Int lhs = a.num_ * b.den_;
    const Int rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // 2^k, k may be negative.
  static Rational pow2(long k);

  // Accepts "p/q" or "k"; sign attaches to the numerator. Throws ParseError.
  static Rational parse(std::string_view text);

  // "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  // Fixed-point decimal with `digits` places, round half away from zero.
  std::string decimal(unsigned digits) const;

private:
  Int num_;
  Int den_;
};

// Smallest k >= 0 with 2^k >= v.
long ceil_log2(const Rational& v);

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace cra
