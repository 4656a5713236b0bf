#include "creal/interval.hpp"

#include <algorithm>

namespace cra {

RatInterval hull(const RatInterval& a, const RatInterval& b) {
  return RatInterval(min(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

std::optional<RatInterval> intersect(const RatInterval& a, const RatInterval& b) {
  Rational lo = max(a.lo(), b.lo());
  Rational hi = min(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return RatInterval(std::move(lo), std::move(hi));
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return RatInterval(a.lo() + b.lo(), a.hi() + b.hi());
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return RatInterval(a.lo() - b.hi(), a.hi() - b.lo());
}

RatInterval operator-(const RatInterval& a) {
  return RatInterval(-a.hi(), -a.lo());
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  const Rational p1 = a.lo() * b.lo();
  const Rational p2 = a.lo() * b.hi();
  const Rational p3 = a.hi() * b.lo();
  const Rational p4 = a.hi() * b.hi();
  return RatInterval(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
}

RatInterval abs(const RatInterval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return -a;
  return RatInterval(Rational(0), max(-a.lo(), a.hi()));
}

RatInterval min(const RatInterval& a, const RatInterval& b) {
  return RatInterval(min(a.lo(), b.lo()), min(a.hi(), b.hi()));
}

RatInterval max(const RatInterval& a, const RatInterval& b) {
  return RatInterval(max(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

}  // namespace cra
