#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "creal/interval.hpp"
#include "creal/rational.hpp"

namespace cra {

// Step budget for semidecidable searches. Exhaustion is an outcome,
// never a disproof.
struct Fuel {
  unsigned long budget = 0;
};

template <typename W>
struct SearchOutcome {
  std::optional<W> witness;
  unsigned long fuel_spent = 0;

  bool found() const { return witness.has_value(); }

  static SearchOutcome found_at(W w, unsigned long spent) {
    return SearchOutcome{std::move(w), spent};
  }
  static SearchOutcome exhausted(unsigned long spent) {
    return SearchOutcome{std::nullopt, spent};
  }
};

// Certifies |x - y| >= gap_lower_bound > 0 from two approximations at the
// same precision: each errs by at most 2^-n, so the true difference is at
// least |left - right| - 2^(1-n).
struct ApartnessWitness {
  unsigned precision = 0;
  Rational left_approx;
  Rational right_approx;
  Rational gap_lower_bound;

  bool recheck() const {
    return gap_lower_bound == abs(left_approx - right_approx) - Rational::pow2(1 - static_cast<long>(precision)) &&
           gap_lower_bound.sign() > 0;
  }
};

// A computable real: precision index n -> rational within 2^-n of the value.
// Queries are deterministic and memoized; values are immutable and cheap to
// copy (shared state).
class CReal {
public:
  Rational approx(unsigned n) const;
  const std::string& provenance() const;

  static CReal from_rational(Rational q);
  static CReal from_fn(std::string provenance, std::function<Rational(unsigned)> fn);

  // The limit of a nested interval stream with width(k) <= 2^-k * width(0).
  // Each pull checks containment in the predecessor and the width bound;
  // violations raise NestingViolation.
  static CReal limit_of_nested(std::function<RatInterval(std::size_t)> stream,
                               std::string provenance);

  friend CReal operator+(const CReal& x, const CReal& y);
  friend CReal operator-(const CReal& x, const CReal& y);
  friend CReal operator-(const CReal& x);
  friend CReal operator*(const CReal& x, const CReal& y);

private:
  struct State;
  std::shared_ptr<State> state_;
  explicit CReal(std::shared_ptr<State> s) : state_(std::move(s)) {}
};

CReal abs(const CReal& x);
CReal min(const CReal& x, const CReal& y);
CReal max(const CReal& x, const CReal& y);

// Iterates n = 0,1,2,... (one fuel unit per level) and reports the first
// level where the approximations differ by more than 2^(1-n).
SearchOutcome<ApartnessWitness> apart(const CReal& x, const CReal& y, Fuel fuel);

enum class Location { BelowB, AboveA };

// Cotransitivity decision for a < b: total, one approx query, ties at the
// midpoint resolve to BelowB. Throws BadStraddle when a >= b.
Location locate(const CReal& x, const Rational& a, const Rational& b);

// Decimal rendering rule for reports: approx at n = ceil(d*log2(10)) + 2,
// rounded to d digits.
std::string render(const CReal& x, unsigned digits);

}  // namespace cra
