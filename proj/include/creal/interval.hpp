#pragma once

#include <optional>
#include <string>

#include "creal/rational.hpp"

namespace cra {

// Closed interval with exact rational endpoints, lo <= hi.
// All operations are outward-exact: the result interval contains
// {x op y : x in I, y in J} with equality for the ops below.
class RatInterval {
public:
  RatInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw BadInterval("interval with lo > hi");
  }
  static RatInterval point(const Rational& x) { return RatInterval(x, x); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RatInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

private:
  Rational lo_;
  Rational hi_;
};

RatInterval hull(const RatInterval& a, const RatInterval& b);
// Empty intersection is a result, not an error.
std::optional<RatInterval> intersect(const RatInterval& a, const RatInterval& b);

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
// Four endpoint products, min/max.
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval abs(const RatInterval& a);
RatInterval min(const RatInterval& a, const RatInterval& b);
RatInterval max(const RatInterval& a, const RatInterval& b);

}  // namespace cra
