#include <doctest.h>

#include <set>

#include "creal/witness_search.hpp"

using namespace cra;

TEST_SUITE("witness_search") {

TEST_CASE("dense enumeration visits the dyadics level by level") {
  const RatInterval unit(Rational(0), Rational(1));
  CHECK(dense_point(unit, 0) == Rational(1));
  CHECK(dense_point(unit, 1) == Rational(1, 2));
  CHECK(dense_point(unit, 2) == Rational(1, 4));
  CHECK(dense_point(unit, 3) == Rational(3, 4));
  CHECK(dense_point(unit, 4) == Rational(1, 8));
  CHECK(dense_point(unit, 5) == Rational(3, 8));
  CHECK(dense_point(unit, 6) == Rational(5, 8));
  CHECK(dense_point(unit, 7) == Rational(7, 8));
  // The same scheme transported to a general interval.
  const RatInterval I(Rational(-1), Rational(3));
  CHECK(dense_point(I, 0) == Rational(3));
  CHECK(dense_point(I, 1) == Rational(1));
  CHECK(dense_point(I, 3) == Rational(2));
}

TEST_CASE("enumeration is injective and stays inside the bounds") {
  const RatInterval I(Rational(1, 3), Rational(2));
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < 128; ++i) {
    const Rational p = dense_point(I, i);
    CHECK(I.contains(p));
    CHECK(p > I.lo());  // lo itself is never enumerated
    CHECK(seen.insert({p.num().str(), p.den().str()}).second);
  }
}

TEST_CASE("density: level-L subintervals are hit by the 2^(L+1) prefix") {
  const RatInterval unit(Rational(0), Rational(1));
  for (unsigned L = 0; L <= 4; ++L) {
    const std::size_t prefix = std::size_t{1} << (L + 1);
    for (unsigned j = 0; j < (1u << L); ++j) {
      const RatInterval cell(Rational(j, 1 << L), Rational(j + 1, 1 << L));
      bool hit = false;
      for (std::size_t i = 0; i < prefix && !hit; ++i)
        hit = cell.contains(dense_point(unit, i));
      CHECK(hit);
    }
  }
}

TEST_CASE("constant functions never produce a witness") {
  const CFunc c{parse_expr("2/3"), RatInterval(Rational(0), Rational(1))};
  for (unsigned long fuel : {0ul, 1ul, 16ul, 256ul, 2048ul}) {
    auto out = find_distinct(c, Fuel{fuel});
    CHECK(!out.found());
    CHECK(out.fuel_spent == fuel);
  }
}

TEST_CASE("identity on [0,1] yields the fixed dovetail witness") {
  const CFunc id{parse_expr("x"), RatInterval(Rational(0), Rational(1))};
  auto out = find_distinct(id, Fuel{64});
  REQUIRE(out.found());
  // Round 3 is the first with a pair exceeding the 2^-2 threshold:
  // f(1) ~ 15/16 at precision 3 (edge enclosure), f(1/2) = 1/2 exactly.
  CHECK(out.witness->p == Rational(1));
  CHECK(out.witness->q == Rational(1, 2));
  CHECK(out.witness->value_witness.precision == 3);
  CHECK(out.witness->value_witness.left_approx == Rational(15, 16));
  CHECK(out.witness->value_witness.right_approx == Rational(1, 2));
  CHECK(out.witness->value_witness.gap_lower_bound == Rational(3, 16));
  CHECK(out.fuel_spent == 6);
  CHECK(out.witness->value_witness.recheck());
}

TEST_CASE("witness values re-evaluate at the stated precision") {
  const CFunc id{parse_expr("x"), RatInterval(Rational(0), Rational(1))};
  auto out = find_distinct(id, Fuel{64});
  REQUIRE(out.found());
  const auto& w = *out.witness;
  const unsigned n = w.value_witness.precision;
  CHECK(eval_at(id, CReal::from_rational(w.p)).approx(n) == w.value_witness.left_approx);
  CHECK(eval_at(id, CReal::from_rational(w.q)).approx(n) ==
        w.value_witness.right_approx);
}

TEST_CASE("monotonicity in fuel: more budget returns the same witness") {
  const CFunc id{parse_expr("x"), RatInterval(Rational(0), Rational(1))};
  auto small = find_distinct(id, Fuel{6});
  auto large = find_distinct(id, Fuel{10000});
  REQUIRE(small.found());
  REQUIRE(large.found());
  CHECK(small.witness->p == large.witness->p);
  CHECK(small.witness->q == large.witness->q);
  CHECK(small.witness->value_witness.precision ==
        large.witness->value_witness.precision);
  CHECK(small.fuel_spent == large.fuel_spent);
  // One unit less and the deciding evaluation never happens.
  CHECK(!find_distinct(id, Fuel{5}).found());
}

TEST_CASE("a vee around 1/2 is caught by the dovetail") {
  const CFunc vee{parse_expr("abs(x + -1/2)"), RatInterval(Rational(0), Rational(1))};
  auto out = find_distinct(vee, Fuel{256});
  REQUIRE(out.found());
  CHECK(out.witness->p == Rational(1));
  CHECK(out.witness->q == Rational(1, 2));
  CHECK(out.witness->value_witness.recheck());
  CHECK(out.witness->value_witness.gap_lower_bound == Rational(1, 8));
}

TEST_CASE("witness points lie inside the domain") {
  const CFunc f{parse_expr("min(x, 1/2) * 3"), RatInterval(Rational(-1), Rational(2))};
  auto out = find_distinct(f, Fuel{512});
  REQUIRE(out.found());
  CHECK(f.domain.contains(out.witness->p));
  CHECK(f.domain.contains(out.witness->q));
  CHECK(!(out.witness->p == out.witness->q));
  CHECK(out.witness->value_witness.recheck());
}

}  // TEST_SUITE
