#include "creal/refuter.hpp"

namespace cra {

namespace {

Rational value_at(const CFunc& f, const Rational& p, unsigned n) {
  return eval_at(f, CReal::from_rational(p)).approx(n);
}

// Smallest n with 2^-n <= bound (bound > 0).
unsigned precision_for(const Rational& bound) {
  unsigned n = 0;
  while (Rational::pow2(-static_cast<long>(n)) > bound) ++n;
  return n;
}

// Lazily extended halving run; stage(k) materializes stages on demand.
class LazyBisection {
public:
  LazyBisection(CFunc f, const DistinctValueWitness& w) : f_(std::move(f)) {
    const unsigned n = w.value_witness.precision;
    if (!w.value_witness.recheck() ||
        value_at(f_, w.p, n) != w.value_witness.left_approx ||
        value_at(f_, w.q, n) != w.value_witness.right_approx)
      throw WitnessInvalid("distinct-value witness does not re-check");
    stages_.push_back(BisectStage{
        RatInterval(min(w.p, w.q), max(w.p, w.q)), w.value_witness.gap_lower_bound,
        Side::Start});
  }

  const BisectStage& stage(std::size_t k) {
    while (stages_.size() <= k) extend();
    return stages_[k];
  }

private:
  void extend() {
    const BisectStage& prev = stages_.back();
    const Rational& gap = prev.gap_bound;
    const unsigned n = precision_for(gap / Rational(8));
    const Rational r = prev.interval.midpoint();
    const Rational vp = value_at(f_, prev.interval.lo(), n);
    const Rational vr = value_at(f_, r, n);
    const Rational vq = value_at(f_, prev.interval.hi(), n);
    const Rational left_gap = abs(vp - vr);
    const Rational right_gap = abs(vr - vq);
    const Rational floor = Rational(2) * Rational::pow2(-static_cast<long>(n));
    if (left_gap < floor && right_gap < floor)
      throw GapCollapse("both side gaps collapsed at stage " +
                        std::to_string(stages_.size()));
    const bool left = left_gap >= right_gap;
    stages_.push_back(BisectStage{
        left ? RatInterval(prev.interval.lo(), r) : RatInterval(r, prev.interval.hi()),
        gap / Rational(4), left ? Side::Left : Side::Right});
  }

  CFunc f_;
  std::vector<BisectStage> stages_;
};

}  // namespace

NestedRun bisect_run(const CFunc& f, const DistinctValueWitness& w, std::size_t depth) {
  LazyBisection run(f, w);
  std::vector<BisectStage> stages;
  for (std::size_t k = 0; k <= depth; ++k) stages.push_back(run.stage(k));
  // Beyond the recorded depth the stream degenerates to the deepest
  // midpoint, so the limit is that midpoint.
  std::vector<RatInterval> intervals;
  for (const auto& s : stages) intervals.push_back(s.interval);
  const RatInterval tail = RatInterval::point(intervals.back().midpoint());
  CReal limit = CReal::limit_of_nested(
      [intervals, tail](std::size_t k) {
        return k < intervals.size() ? intervals[k] : tail;
      },
      "bisection limit");
  return NestedRun{std::move(stages), std::move(limit)};
}

SearchOutcome<LocalityContradiction> refute_locality(const CFunc& f,
                                                     const LocalityOracle& oracle,
                                                     Fuel search_fuel,
                                                     std::size_t max_depth) {
  auto search = find_distinct(f, search_fuel);
  if (!search.found())
    return SearchOutcome<LocalityContradiction>::exhausted(search.fuel_spent);
  unsigned long spent = search.fuel_spent;

  LazyBisection run(f, *search.witness);
  const Rational w0 = run.stage(0).interval.width();

  // Settle on (center, radius, precision): the center is the limit point
  // approximated to 2^-n < radius/4, but the radius itself depends on the
  // queried center, so iterate until the pair is consistent.
  Rational center(0), radius(0);
  unsigned n = 2;
  bool settled = false;
  for (int iter = 0; iter < 64 && !settled; ++iter) {
    // Midpoint of a stage of width <= 2^(1-n) is within 2^-n of the limit.
    const Rational bound = Rational::pow2(1 - static_cast<long>(n));
    std::size_t k = 0;
    while (w0 * Rational::pow2(-static_cast<long>(k)) > bound) {
      if (++k > max_depth)
        return SearchOutcome<LocalityContradiction>::exhausted(spent);
    }
    center = run.stage(k).interval.midpoint();
    radius = oracle.radius_at(center);
    if (radius.sign() <= 0)
      throw InvariantViolation("locality oracle returned a non-positive radius");
    if (Rational::pow2(-static_cast<long>(n)) < radius / Rational(4))
      settled = true;
    else
      n = precision_for(radius / Rational(8));  // 2^-n <= r/8 < r/4
  }
  if (!settled) return SearchOutcome<LocalityContradiction>::exhausted(spent);

  // Exact fit test: the stage sits inside (d - r, d + r) whenever it sits
  // inside [c - r + 2^-n, c + r - 2^-n] strictly, since |d - c| <= 2^-n.
  const Rational eps = Rational::pow2(-static_cast<long>(n));
  for (std::size_t k = 0; k <= max_depth; ++k) {
    const BisectStage st = run.stage(k);
    if (st.interval.lo() > center - radius + eps &&
        st.interval.hi() < center + radius - eps) {
      auto gap = apart(eval_at(f, CReal::from_rational(st.interval.lo())),
                       eval_at(f, CReal::from_rational(st.interval.hi())),
                       Fuel{4 * max_depth + 128});
      spent += gap.fuel_spent;
      if (!gap.found())
        throw GapCollapse("endpoint gap vanished at the contradiction stage");
      return SearchOutcome<LocalityContradiction>::found_at(
          LocalityContradiction{center, radius, n, k, st.interval,
                                std::move(*gap.witness)},
          spent);
    }
  }
  return SearchOutcome<LocalityContradiction>::exhausted(spent);
}

}  // namespace cra
