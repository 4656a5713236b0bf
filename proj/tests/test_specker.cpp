#include <doctest.h>

#include <algorithm>
#include <memory>

#include "creal/specker.hpp"

using namespace cra;

namespace {

// Independent oracle: the construction formula applied directly to a
// stage set, bypassing SpeckerStream.
Rational term_oracle(const std::vector<unsigned>& stage, unsigned n) {
  Rational raw(0);
  for (unsigned i : stage) raw = raw + Rational::pow2(-(long)i - 1);
  return (raw + Rational(1) - Rational::pow2(-(long)n)) / Rational(2);
}

DecompositionSets make_sets(HaltingSource src) {
  return DecompositionSets{std::make_shared<SpeckerStream>(std::move(src))};
}

}  // namespace

TEST_SUITE("specker") {

TEST_CASE("empty source terms follow the closed form") {
  const SpeckerStream s(empty_source());
  CHECK(s.term(3) == Rational(7, 16));
  for (unsigned n = 0; n <= 32; ++n)
    CHECK(s.term(n) == (Rational(1) - Rational::pow2(-(long)n)) / Rational(2));
}

TEST_CASE("a halt at stage 2 lifts the sum") {
  const SpeckerStream s(table_source("t", {{0, 2}}));
  CHECK(s.term(0) == Rational(0));
  CHECK(s.term(1) == Rational(1, 4));
  CHECK(s.term(2) == Rational(5, 8));  // (1/2 + 3/4) / 2
  CHECK(s.term(0) < s.term(1));
  CHECK(s.term(1) < s.term(2));
}

TEST_CASE("builtin sources satisfy the stage examples") {
  CHECK(empty_source().stage(100).empty());
  const auto c8 = collatz_source().stage(8);
  CHECK(std::find(c8.begin(), c8.end(), 0u) != c8.end());
  // The trajectory of 7 reaches 1 in 16 steps, so index 6 is in by stage 20.
  const auto c20 = collatz_source().stage(20);
  CHECK(std::find(c20.begin(), c20.end(), 6u) != c20.end());
  const auto c10 = collatz_source().stage(10);
  CHECK(std::find(c10.begin(), c10.end(), 6u) == c10.end());
}

TEST_CASE("terms are strictly increasing and stay in the unit interval") {
  for (HaltingSource src : {empty_source(), collatz_source(),
                            table_source("t", {{0, 2}, {3, 5}, {7, 30}})}) {
    const SpeckerStream s(std::move(src));
    Rational prev = s.term(0);
    CHECK(prev >= Rational(0));
    for (unsigned n = 1; n <= 256; ++n) {
      const Rational cur = s.term(n);
      CHECK(prev < cur);
      CHECK(cur < Rational(1));
      prev = cur;
    }
  }
}

TEST_CASE("terms agree with the independent formula oracle") {
  for (HaltingSource src : {empty_source(), collatz_source()}) {
    HaltingSource probe = src;  // query the raw source separately
    const SpeckerStream s(std::move(src));
    for (unsigned n = 0; n <= 64; ++n)
      CHECK(s.term(n) == term_oracle(probe.stage(n), n));
  }
}

TEST_CASE("sources that shrink or overflow are rejected") {
  const SpeckerStream shrinking(HaltingSource{
      "shrink", [](unsigned n) {
        return n == 1 ? std::vector<unsigned>{0} : std::vector<unsigned>{};
      }});
  CHECK_THROWS_AS((void)shrinking.term(2), SourceViolation);

  const SpeckerStream unbounded(HaltingSource{
      "big", [](unsigned) { return std::vector<unsigned>{5}; }});
  CHECK_THROWS_AS((void)unbounded.term(0), SourceViolation);
}

TEST_CASE("zero sits inside A with the hand-run certificate") {
  auto out = in_A(make_sets(empty_source()), CReal::from_rational(Rational(0)), Fuel{16});
  REQUIRE(out.found());
  // n = 1 fails (0 + 1/2 is not below 1/4); n = 2 passes (1/4 < 3/8).
  CHECK(out.witness->n == 2);
  CHECK(out.witness->s_n == Rational(3, 8));
  CHECK(out.witness->margin == Rational(1, 8));
  CHECK(out.fuel_spent == 2);
  CHECK(out.witness->recheck());
}

TEST_CASE("one is never certified in A") {
  for (unsigned long fuel : {1ul, 64ul, 1000ul}) {
    auto out = in_A(make_sets(empty_source()), CReal::from_rational(Rational(1)),
                    Fuel{fuel});
    CHECK(!out.found());
    CHECK(out.fuel_spent == fuel);
  }
}

TEST_CASE("an early term is overtaken by strict increase") {
  const DecompositionSets sets = make_sets(collatz_source());
  const Rational s5 = sets.stream->term(5);
  auto out = in_A(sets, CReal::from_rational(s5), Fuel{512});
  REQUIRE(out.found());
  CHECK(out.witness->n >= 6);
  CHECK(out.witness->s_n > s5);
  CHECK(out.witness->recheck());
}

TEST_CASE("refute_in_B is the same search relabeled") {
  const DecompositionSets sets = make_sets(empty_source());
  auto a = in_A(sets, CReal::from_rational(Rational(1, 8)), Fuel{64});
  auto b = refute_in_B(sets, CReal::from_rational(Rational(1, 8)), Fuel{64});
  REQUIRE(a.found());
  REQUIRE(b.found());
  CHECK(a.witness->n == b.witness->n);
  CHECK(a.witness->margin == b.witness->margin);
}

TEST_CASE("in_A with zero fuel exhausts at once") {
  auto out = in_A(make_sets(empty_source()), CReal::from_rational(Rational(0)), Fuel{0});
  CHECK(!out.found());
  CHECK(out.fuel_spent == 0);
}

TEST_CASE("closure search on a stalled table source") {
  // All halts land by stage 3, so the limit of the terms is the rational
  // sup (1/2 + 1/8 + 1)/2 = 13/16.
  const DecompositionSets sets = make_sets(table_source("t", {{0, 1}, {2, 3}}));
  const Rational sup(13, 16);
  const std::vector<std::pair<Rational, unsigned>> seq = {
      {sup - Rational(1, 4), 2}, {sup - Rational(1, 8), 3}, {sup - Rational(1, 16), 4}};
  const Rational limit = sup - Rational(1, 1000);
  auto out = closure_search(sets, seq, CReal::from_rational(limit), Fuel{512});
  REQUIRE(out.found());
  CHECK(out.witness->n == 11);
  CHECK(out.witness->s_n > limit);
  CHECK(out.witness->recheck());
}

TEST_CASE("closure rejects sequence points outside A") {
  const DecompositionSets sets = make_sets(empty_source());
  const std::vector<std::pair<Rational, unsigned>> seq = {{Rational(1), 4}};
  CHECK_THROWS_AS(
      closure_search(sets, seq, CReal::from_rational(Rational(1, 2)), Fuel{32}),
      PrecheckFailed);
}

TEST_CASE("closure rejects a limit the sequence does not approach") {
  const DecompositionSets sets = make_sets(empty_source());
  // The point certifies in A but sits nowhere near the claimed limit for
  // its convergence index.
  const std::vector<std::pair<Rational, unsigned>> seq = {{Rational(1, 8), 10}};
  CHECK_THROWS_AS(
      closure_search(sets, seq, CReal::from_rational(Rational(7, 8)), Fuel{64}),
      PrecheckFailed);
}

TEST_CASE("closure on a limit outside A exhausts") {
  const DecompositionSets sets = make_sets(empty_source());
  auto out = closure_search(sets, {}, CReal::from_rational(Rational(1)), Fuel{128});
  CHECK(!out.found());
  CHECK(out.fuel_spent == 128);
}

}  // TEST_SUITE
