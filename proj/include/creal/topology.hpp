#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "creal/creal.hpp"

namespace cra {

struct Ball {
  Rational center;
  Rational radius;  // > 0
};

// Constructive open set: a total enumeration of rational balls. Finite
// lists repeat cyclically so the enumeration stays total.
struct OpenSet {
  std::string name;
  std::function<Ball(std::size_t)> ball_at;

  static OpenSet finite(std::string name, std::vector<Ball> balls);
  // Canonical generators covering (t - 2*step, t) resp. (t, t + 2*step):
  // k-th ball has center t -/+ step*2^-k*3/2 and radius step*2^-k/2.
  static OpenSet halfline_below(std::string name, Rational t, Rational step);
  static OpenSet halfline_above(std::string name, Rational t, Rational step);
};

// Certifies |x - center| <= radius - margin by exact arithmetic on
// point_approx, x's approximation at the stated precision.
struct MembershipCert {
  std::string set_name;
  std::size_t ball_index = 0;
  Rational center;
  Rational radius;
  unsigned precision = 0;
  Rational point_approx;
  Rational margin;

  bool recheck() const {
    return margin.sign() > 0 &&
           abs(point_approx - center) <=
               radius - margin - Rational::pow2(-static_cast<long>(precision));
  }
};

// Dovetail over (ball index, precision): round t tests the first t balls
// at precision t, one fuel unit per test.
SearchOutcome<MembershipCert> member(const OpenSet& S, const CReal& x, Fuel fuel);

enum class SetLabel { A, B, Unknown };

struct Classification {
  Rational point;
  SetLabel label = SetLabel::Unknown;
  std::optional<MembershipCert> cert;
};

// First `count` dyadic points of `bounds`, each classified by interleaved
// membership searches (A tested before B at equal (ball, precision)) under
// a per-set fuel slice.
std::vector<Classification> classify_rationals(const OpenSet& A, const OpenSet& B,
                                               const RatInterval& bounds,
                                               std::size_t count, Fuel slice);

// A rational point certified in both sets: the claimed partition is not
// disjoint.
struct OverlapViolation {
  Rational point;
  MembershipCert cert_a;
  MembershipCert cert_b;
};

// A point neither search could classify within its slice: a suspicion
// that the pair fails to cover, never a proof.
struct CoverageGap {
  Rational point;
  unsigned long fuel_spent = 0;
};

using PartitionViolation = std::variant<OverlapViolation, CoverageGap>;

// Theorem-2-style refuter: seed endpoints in A and B among the dyadic
// rationals, bisect keeping mixed-label endpoints, chase the limit point
// into one of the open sets, then certify a nearby opposite endpoint in
// both. Throws BadBounds on a degenerate interval.
SearchOutcome<PartitionViolation> refute_partition(const OpenSet& A, const OpenSet& B,
                                                   const RatInterval& bounds,
                                                   Fuel fuel, Fuel slice);

}  // namespace cra
