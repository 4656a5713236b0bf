#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "creal/creal.hpp"

namespace cra {

// Stage-wise view of a recursively enumerable set: stage(n) is the sorted
// set of indices known to have halted by stage n. Must be monotone in n
// and a subset of {0..n}; violations raise SourceViolation when queried.
struct HaltingSource {
  std::string name;
  std::function<std::vector<unsigned>(unsigned)> stage;
};

HaltingSource empty_source();
// Index i "halts at stage n" iff the 3x+1 trajectory of i+1 reaches 1
// within n steps.
HaltingSource collatz_source();
// Explicit (index, stage) table; all other indices never halt.
HaltingSource table_source(std::string name,
                           std::vector<std::pair<unsigned, unsigned>> entries);

// Strictly increasing rationals in [0, 1):
//   raw(n) = sum over i in stage(n) of 2^-(i+1)
//   s_n    = (raw(n) + 1 - 2^-n) / 2
// The blend makes the nondecreasing halting sum strictly increasing.
class SpeckerStream {
public:
  explicit SpeckerStream(HaltingSource source);

  const HaltingSource& source() const { return source_; }
  Rational term(unsigned n) const;

private:
  HaltingSource source_;
  mutable std::mutex mu_;
  mutable std::map<unsigned, std::vector<unsigned>> stage_cache_;
};

// A = union of [0, s_n), B = intersection of [s_n, 1]. Only the
// semidecidable directions are operational: x in A and x not in B are
// both witnessed by a certified x < s_n.
struct DecompositionSets {
  std::shared_ptr<const SpeckerStream> stream;
};

// Witness that x < s_n with an explicit margin, checked at precision n.
struct SpeckerCert {
  unsigned n = 0;
  Rational s_n;
  Rational x_approx;
  Rational margin;  // s_n - x_approx - 2^-n > 0

  bool recheck() const {
    return margin.sign() > 0 &&
           margin == s_n - x_approx - Rational::pow2(-static_cast<long>(n));
  }
};

// Search n = 1, 2, ... for a certified x < s_n (one fuel unit per n).
SearchOutcome<SpeckerCert> in_A(const DecompositionSets& sets, const CReal& x, Fuel fuel);

// Same search; a hit refutes x in B.
SearchOutcome<SpeckerCert> refute_in_B(const DecompositionSets& sets, const CReal& x,
                                       Fuel fuel);

// Sequential-closure instance: every listed point must certify in A under
// a per-point slice equal to `fuel` (else PrecheckFailed), the limit must
// match the claimed 2^-index convergence of the points by sampling, and
// the result is in_A on the limit.
SearchOutcome<SpeckerCert> closure_search(const DecompositionSets& sets,
                                          const std::vector<std::pair<Rational, unsigned>>& seq,
                                          const CReal& limit, Fuel fuel);

}  // namespace cra
