#pragma once

#include <cstddef>
#include <vector>

#include "creal/func.hpp"
#include "creal/witness_search.hpp"

namespace cra {

enum class Side { Start, Left, Right };

struct BisectStage {
  RatInterval interval;
  Rational gap_bound;  // certified lower bound on |f(lo) - f(hi)|
  Side side;           // half chosen relative to the previous stage
};

// Record of a halving run: stage k has width (q0-p0)/2^k exactly and a
// positive gap bound >= gap0/4^k. The limit real lives in every stage.
struct NestedRun {
  std::vector<BisectStage> stages;
  CReal limit;
};

// Halve `depth` times starting from the witness interval. At each stage
// f is evaluated at both endpoints and the midpoint to precision n with
// 2^-n <= gap/8; the side with the larger approximate gap is kept (tie:
// left) and the gap bound becomes gap/4.
// Throws WitnessInvalid if the witness does not re-check, GapCollapse if
// both side gaps fall below 2*2^-n.
NestedRun bisect_run(const CFunc& f, const DistinctValueWitness& w, std::size_t depth);

struct LocalityContradiction {
  Rational center;          // rational approximation of the limit point
  Rational claimed_radius;  // oracle's constancy radius at that center
  unsigned precision;       // 2^-precision < claimed_radius/4
  std::size_t inner_stage;  // stage provably inside the constancy ball
  RatInterval stage_interval;
  ApartnessWitness endpoint_gap;  // f differs at that stage's endpoints
};

// Search for a distinct-value witness, then deepen the bisection until a
// stage interval fits inside the oracle's claimed constancy ball around
// the limit point. The fit test is exact rational arithmetic.
SearchOutcome<LocalityContradiction> refute_locality(const CFunc& f,
                                                     const LocalityOracle& oracle,
                                                     Fuel search_fuel,
                                                     std::size_t max_depth);

}  // namespace cra
