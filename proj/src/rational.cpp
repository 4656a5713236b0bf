#include "creal/rational.hpp"

#include <cctype>

namespace cra {

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw DivisionByZero("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DivisionByZero("division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::pow2(long k) {
  Int one = 1;
  if (k >= 0) return Rational(one << static_cast<unsigned>(k));
  Rational r;
  r.num_ = 1;
  r.den_ = one << static_cast<unsigned>(-k);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(msg, 1, pos + 1);
  };
  auto read_int = [&](bool allow_sign) -> Int {
    bool neg = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw fail("expected digit");
    Int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? Int(-v) : v;
  };
  Int num = read_int(true);
  Int den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = read_int(false);
  }
  if (pos != text.size()) throw fail("trailing characters in rational");
  if (den == 0) throw fail("zero denominator");
  return Rational(num, den);
}

long ceil_log2(const Rational& v) {
  long k = 0;
  Rational p(1);
  while (p < v) {
    p = p * Rational(2);
    ++k;
  }
  return k;
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

std::string Rational::decimal(unsigned digits) const {
  Int scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Int n = num_ < 0 ? Int(-num_) : num_;
  Int scaled = n * scale;
  Int q = scaled / den_;
  Int r = scaled % den_;
  if (2 * r >= den_) ++q;  // half away from zero
  Int whole = q / scale;
  Int frac = q % scale;
  std::string s;
  if (num_ < 0 && q != 0) s += '-';
  s += whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    s += '.';
    s += std::string(digits - f.size(), '0');
    s += f;
  }
  return s;
}

}  // namespace cra
