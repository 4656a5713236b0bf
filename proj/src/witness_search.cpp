#include "creal/witness_search.hpp"

#include <vector>

namespace cra {

Rational dense_point(const RatInterval& bounds, std::size_t index) {
  if (index == 0) return bounds.hi();
  // Level of index i >= 1 is its bit length; levels hold 2^(l-1) points.
  std::size_t level = 0;
  for (std::size_t v = index; v > 0; v >>= 1) ++level;
  const std::size_t offset = index - (std::size_t{1} << (level - 1));
  const Int k = 2 * Int(offset) + 1;
  const Rational frac(k, Int(1) << static_cast<unsigned>(level));
  return bounds.lo() + bounds.width() * frac;
}

SearchOutcome<DistinctValueWitness> find_distinct(const CFunc& f, Fuel fuel) {
  unsigned long spent = 0;
  std::vector<Rational> points;
  std::vector<CReal> values;   // memoized f(point) oracles
  std::vector<Rational> approx;
  for (unsigned t = 1;; ++t) {
    while (points.size() < t) {
      points.push_back(dense_point(f.domain, points.size()));
      values.push_back(eval_at(f, CReal::from_rational(points.back())));
    }
    approx.resize(t);
    for (unsigned i = 0; i < t; ++i) {
      if (spent >= fuel.budget)
        return SearchOutcome<DistinctValueWitness>::exhausted(spent);
      ++spent;
      approx[i] = values[i].approx(t);
    }
    const Rational threshold = Rational::pow2(1 - static_cast<long>(t));
    for (unsigned i = 0; i < t; ++i) {
      for (unsigned j = i + 1; j < t; ++j) {
        const Rational d = abs(approx[i] - approx[j]);
        if (d > threshold) {
          ApartnessWitness w{t, approx[i], approx[j], d - threshold};
          return SearchOutcome<DistinctValueWitness>::found_at(
              DistinctValueWitness{points[i], points[j], std::move(w)}, spent);
        }
      }
    }
  }
}

}  // namespace cra
