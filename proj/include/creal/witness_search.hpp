#pragma once

#include "creal/creal.hpp"
#include "creal/func.hpp"

namespace cra {

// Fixed dyadic enumeration of (a, b]: index 0 is b (level 0, k = 1);
// level l >= 1 contributes the 2^(l-1) points a + (b-a)*k/2^l with odd k,
// in increasing k order. Injective and dense in [a, b].
Rational dense_point(const RatInterval& bounds, std::size_t index);

struct DistinctValueWitness {
  Rational p;
  Rational q;
  ApartnessWitness value_witness;  // for f(p) vs f(q)
};

// Lemma-style dovetail: round t evaluates f at the first t enumerated
// points to precision t (one fuel unit per evaluation) and tests all pairs
// against the 2^(1-t) threshold; the lexicographically first hit wins.
// Exhausted is "not found within budget", never "f is constant".
SearchOutcome<DistinctValueWitness> find_distinct(const CFunc& f, Fuel fuel);

}  // namespace cra
