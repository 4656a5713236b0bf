#include "creal/topology.hpp"

#include <utility>

#include "creal/witness_search.hpp"

namespace cra {

OpenSet OpenSet::finite(std::string name, std::vector<Ball> balls) {
  if (balls.empty()) throw InvariantViolation("open set needs at least one ball");
  for (const auto& b : balls)
    if (b.radius.sign() <= 0) throw InvariantViolation("ball radius must be positive");
  return OpenSet{std::move(name), [balls](std::size_t i) { return balls[i % balls.size()]; }};
}

OpenSet OpenSet::halfline_below(std::string name, Rational t, Rational step) {
  if (step.sign() <= 0) throw InvariantViolation("halfline step must be positive");
  return OpenSet{std::move(name), [t, step](std::size_t k) {
                   const Rational scale = step * Rational::pow2(-static_cast<long>(k));
                   return Ball{t - scale * Rational(3) / Rational(2), scale / Rational(2)};
                 }};
}

OpenSet OpenSet::halfline_above(std::string name, Rational t, Rational step) {
  if (step.sign() <= 0) throw InvariantViolation("halfline step must be positive");
  return OpenSet{std::move(name), [t, step](std::size_t k) {
                   const Rational scale = step * Rational::pow2(-static_cast<long>(k));
                   return Ball{t + scale * Rational(3) / Rational(2), scale / Rational(2)};
                 }};
}

namespace {

// Exact ball test at precision n; margin 2^-n on success.
std::optional<MembershipCert> test_ball(const OpenSet& S, std::size_t i,
                                        const CReal& x, unsigned n) {
  const Ball b = S.ball_at(i);
  if (b.radius.sign() <= 0) throw InvariantViolation("ball radius must be positive");
  const Rational eps = Rational::pow2(-static_cast<long>(n));
  const Rational a = x.approx(n);
  if (abs(a - b.center) <= b.radius - Rational(2) * eps)
    return MembershipCert{S.name, i, b.center, b.radius, n, a, eps};
  return std::nullopt;
}

}  // namespace

SearchOutcome<MembershipCert> member(const OpenSet& S, const CReal& x, Fuel fuel) {
  unsigned long spent = 0;
  for (unsigned t = 1;; ++t) {
    for (std::size_t i = 0; i < t; ++i) {
      if (spent >= fuel.budget) return SearchOutcome<MembershipCert>::exhausted(spent);
      ++spent;
      if (auto cert = test_ball(S, i, x, t))
        return SearchOutcome<MembershipCert>::found_at(std::move(*cert), spent);
    }
  }
}

namespace {

struct ClassifyResult {
  SetLabel label = SetLabel::Unknown;
  std::optional<MembershipCert> cert;
  unsigned long used = 0;
};

// Interleaved membership: within round t, A's (i, t) test runs just
// before B's, so A wins exact ties. Each set spends its own slice.
ClassifyResult classify_point(const OpenSet& A, const OpenSet& B, const CReal& x,
                              unsigned long slice_a, unsigned long slice_b) {
  ClassifyResult res;
  unsigned long used_a = 0, used_b = 0;
  for (unsigned t = 1; used_a < slice_a || used_b < slice_b; ++t) {
    for (std::size_t i = 0; i < t; ++i) {
      if (used_a < slice_a) {
        ++used_a;
        if (auto cert = test_ball(A, i, x, t)) {
          res.label = SetLabel::A;
          res.cert = std::move(*cert);
          res.used = used_a + used_b;
          return res;
        }
      }
      if (used_b < slice_b) {
        ++used_b;
        if (auto cert = test_ball(B, i, x, t)) {
          res.label = SetLabel::B;
          res.cert = std::move(*cert);
          res.used = used_a + used_b;
          return res;
        }
      }
    }
  }
  res.used = used_a + used_b;
  return res;
}

}  // namespace

std::vector<Classification> classify_rationals(const OpenSet& A, const OpenSet& B,
                                               const RatInterval& bounds,
                                               std::size_t count, Fuel slice) {
  std::vector<Classification> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const Rational p = dense_point(bounds, j);
    ClassifyResult res = classify_point(A, B, CReal::from_rational(p), slice.budget,
                                        slice.budget);
    out.push_back(Classification{p, res.label, std::move(res.cert)});
  }
  return out;
}

namespace {

// Internal control flow for phases 2/3: a point failed to classify.
struct PhaseAbort {
  CoverageGap gap;
};

struct LabeledPoint {
  Rational point;
  MembershipCert cert;
};

// The bisection state of phases 2/3: endpoints with opposite labels,
// midpoints classified on demand.
class PartitionBisection {
public:
  PartitionBisection(const OpenSet& A, const OpenSet& B, LabeledPoint a_end,
                     LabeledPoint b_end, unsigned long slice, unsigned long budget,
                     unsigned long& spent)
      : A_(A), B_(B), slice_(slice), budget_(budget), spent_(spent) {
    a_ends_.push_back(std::move(a_end));
    b_ends_.push_back(std::move(b_end));
  }

  RatInterval interval(std::size_t k) {
    while (a_ends_.size() <= k) extend();
    return make_interval(k);
  }

  const LabeledPoint& a_end(std::size_t k) { interval(k); return a_ends_[k]; }
  const LabeledPoint& b_end(std::size_t k) { interval(k); return b_ends_[k]; }

private:
  RatInterval make_interval(std::size_t k) const {
    const Rational& a = a_ends_[k].point;
    const Rational& b = b_ends_[k].point;
    return RatInterval(min(a, b), max(a, b));
  }

  void extend() {
    const std::size_t k = a_ends_.size() - 1;
    const Rational m = make_interval(k).midpoint();
    if (spent_ >= budget_) throw PhaseAbort{CoverageGap{m, spent_}};
    const unsigned long room = budget_ - spent_;
    ClassifyResult res = classify_point(A_, B_, CReal::from_rational(m),
                                        std::min(slice_, room), std::min(slice_, room));
    spent_ += res.used > 0 ? res.used : 1;
    if (res.label == SetLabel::Unknown) throw PhaseAbort{CoverageGap{m, spent_}};
    LabeledPoint moved{m, std::move(*res.cert)};
    if (res.label == SetLabel::A) {
      a_ends_.push_back(std::move(moved));
      b_ends_.push_back(b_ends_.back());
    } else {
      a_ends_.push_back(a_ends_.back());
      b_ends_.push_back(std::move(moved));
    }
  }

  const OpenSet& A_;
  const OpenSet& B_;
  unsigned long slice_;
  unsigned long budget_;
  unsigned long& spent_;
  std::vector<LabeledPoint> a_ends_;
  std::vector<LabeledPoint> b_ends_;
};

}  // namespace

SearchOutcome<PartitionViolation> refute_partition(const OpenSet& A, const OpenSet& B,
                                                   const RatInterval& bounds,
                                                   Fuel fuel, Fuel slice) {
  if (bounds.width().is_zero()) throw BadBounds("bounds must have positive width");
  unsigned long spent = 0;
  std::optional<CoverageGap> first_unknown;

  // Phase 1: seed one dyadic point in each set.
  std::optional<LabeledPoint> seed_a, seed_b;
  for (std::size_t j = 0; !(seed_a && seed_b); ++j) {
    if (spent >= fuel.budget) {
      // With no seed at all there is nothing to suspect; partial progress
      // turns the first unclassifiable point into a coverage suspicion.
      if (first_unknown && (seed_a || seed_b))
        return SearchOutcome<PartitionViolation>::found_at(*first_unknown, spent);
      return SearchOutcome<PartitionViolation>::exhausted(spent);
    }
    const Rational p = dense_point(bounds, j);
    const unsigned long room = fuel.budget - spent;
    ClassifyResult res = classify_point(A, B, CReal::from_rational(p),
                                        std::min(slice.budget, room),
                                        std::min(slice.budget, room));
    spent += res.used > 0 ? res.used : 1;
    if (res.label == SetLabel::Unknown) {
      if (!first_unknown) first_unknown = CoverageGap{p, spent};
    } else if (res.label == SetLabel::A) {
      if (!seed_a) seed_a = LabeledPoint{p, std::move(*res.cert)};
    } else {
      if (!seed_b) seed_b = LabeledPoint{p, std::move(*res.cert)};
    }
  }

  try {
    // Phase 2 (lazy): bisect keeping one endpoint in each set.
    PartitionBisection run(A, B, *seed_a, *seed_b, slice.budget, fuel.budget, spent);

    // Phase 3: chase the limit point into one of the sets.
    CReal s = CReal::limit_of_nested(
        [&run](std::size_t k) { return run.interval(k); }, "partition limit");
    std::optional<MembershipCert> hit;
    bool hit_in_a = false;
    for (unsigned t = 1; !hit; ++t) {
      for (std::size_t i = 0; i < t && !hit; ++i) {
        if (spent >= fuel.budget)
          return SearchOutcome<PartitionViolation>::exhausted(spent);
        ++spent;
        if (auto cert = test_ball(A, i, s, t)) {
          hit = std::move(*cert);
          hit_in_a = true;
          break;
        }
        if (spent >= fuel.budget)
          return SearchOutcome<PartitionViolation>::exhausted(spent);
        ++spent;
        if (auto cert = test_ball(B, i, s, t)) {
          hit = std::move(*cert);
          hit_in_a = false;
        }
      }
    }

    // The opposite-label endpoints converge to s, which sits strictly
    // inside the winning ball; a deep enough one lands in it too.
    for (std::size_t k = 0;; ++k) {
      const LabeledPoint& opp = hit_in_a ? run.b_end(k) : run.a_end(k);
      const Rational dist = abs(opp.point - hit->center);
      if (dist < hit->radius) {
        const Rational margin = (hit->radius - dist) / Rational(2);
        unsigned prec = 0;
        while (Rational::pow2(-static_cast<long>(prec)) > margin / Rational(2)) ++prec;
        MembershipCert in_winner{hit->set_name, hit->ball_index, hit->center,
                                 hit->radius,   prec,            opp.point,
                                 margin};
        OverlapViolation overlap =
            hit_in_a ? OverlapViolation{opp.point, std::move(in_winner), opp.cert}
                     : OverlapViolation{opp.point, opp.cert, std::move(in_winner)};
        return SearchOutcome<PartitionViolation>::found_at(std::move(overlap), spent);
      }
    }
  } catch (const PhaseAbort& abort) {
    return SearchOutcome<PartitionViolation>::found_at(abort.gap, spent);
  }
}

}  // namespace cra
