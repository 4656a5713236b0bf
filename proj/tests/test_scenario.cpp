#include <doctest.h>

#include "creal/report.hpp"
#include "creal/scenario.hpp"

using namespace cra;

namespace {

const char* kCorpus = R"(# exercises every command form
func id = x on [0, 1]
func vee = abs(x + -1/2) on [0, 1]
func flat = 2/3 on [0, 1]
oracle narrow = radius const 1/10
openset A = halfline_below(3/5, 1/2)
openset B = halfline_above(2/5, 1/2)
openset GA = halfline_below(49/100, 1/2)
openset GB = halfline_above(51/100, 1/2)
source stalled = table [(0,1), (2,3)]
specker S from stalled
specker E from empty

find-distinct id fuel=64
find-distinct flat fuel=64
refute-local id narrow fuel=64 depth=64
refute-partition A B bounds=[0,1]
refute-partition GA GB bounds=[0,1]
classify A B bounds=[0,1] count=4
member A x=1/3 fuel=128
eval vee x=3/4 prec=20
term S k=3
inA E x=0
refuteB S x=1/2
closure S limit=1623/2000 seq=[(9/16,2),(11/16,3),(3/4,4)]
)";

bool node_equal(const ReportNode& a, const ReportNode& b) {
  if (a.key != b.key || a.value != b.value || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!node_equal(a.children[i], b.children[i])) return false;
  return true;
}

const ReportNode& get(const ReportNode& n, const std::string& key) {
  const ReportNode* c = n.find(key);
  REQUIRE(c != nullptr);
  return *c;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("empty scenario runs to an empty result") {
  const Scenario sc = parse_scenario("# nothing but comments\n\n");
  CHECK(sc.commands.empty());
  const RunResult out = run_scenario(sc, RunDefaults{});
  CHECK(out.reports.empty());
  CHECK(!out.had_error);
}

TEST_CASE("declarations parse and resolve") {
  const Scenario sc = parse_scenario(kCorpus);
  CHECK(sc.funcs.size() == 3);
  CHECK(sc.oracles.size() == 1);
  CHECK(sc.opensets.size() == 4);
  CHECK(sc.streams.count("S") == 1);
  CHECK(sc.streams.count("E") == 1);
  CHECK(sc.commands.size() == 12);
  CHECK(sc.funcs.at("id").domain == RatInterval(Rational(0), Rational(1)));
}

TEST_CASE("parse errors carry the offending line") {
  try {
    parse_scenario("func f = x on [0,1]\nblargh f\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_scenario("func f = x\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("oracle o = radius cube 2\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("func f = x on [0,1]\nfunc f = x on [0,1]\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario("specker S from nowhere\n"), ParseError);
}

TEST_CASE("find-distinct reports the deterministic witness") {
  const Scenario sc = parse_scenario(kCorpus);
  const RunResult out = run_scenario(sc, RunDefaults{});
  REQUIRE(out.reports.size() == 12);
  CHECK(!out.had_error);

  const ReportNode& r = out.reports[0];
  CHECK(get(r, "outcome").value == "found");
  CHECK(get(r, "fuel_spent").value == "6");
  const ReportNode& w = get(r, "distinct-value");
  CHECK(get(w, "p").value == "1 ~ 1.000000");
  CHECK(get(w, "q").value == "1/2 ~ 0.500000");
  const ReportNode& ap = get(w, "apartness");
  CHECK(get(ap, "precision").value == "3");
  CHECK(get(ap, "gap_lower_bound").value == "3/16 ~ 0.187500");

  // The constant function honestly exhausts.
  CHECK(get(out.reports[1], "outcome").value == "exhausted");
  CHECK(get(out.reports[1], "fuel_spent").value == "64");
}

TEST_CASE("command echoes include the effective fuel values") {
  const Scenario sc = parse_scenario(kCorpus);
  const RunResult out = run_scenario(sc, RunDefaults{});
  CHECK(get(out.reports[0], "command").value == "find-distinct id fuel=64");
  CHECK(get(out.reports[3], "command").value ==
        "refute-partition A B bounds=[0,1] fuel=65536 slice=128");
  CHECK(get(out.reports[9], "command").value == "inA E x=0 fuel=512");
}

TEST_CASE("the corpus covers found, exhausted, and both violation kinds") {
  const Scenario sc = parse_scenario(kCorpus);
  const RunResult out = run_scenario(sc, RunDefaults{});
  CHECK(get(out.reports[2], "outcome").value == "found");  // refute-local
  CHECK(get(out.reports[3], "violation").value == "overlap");
  CHECK(get(out.reports[4], "violation").value == "coverage-gap");
  CHECK(get(out.reports[5], "outcome").value == "ok");  // classify
  CHECK(get(out.reports[6], "outcome").value == "found");  // member
  CHECK(get(out.reports[8], "term").value.rfind("3/4", 0) == 0);  // s_3 stalled
  CHECK(get(out.reports[10], "outcome").value == "found");  // refuteB 1/2 < sup
  const ReportNode& closure = get(out.reports[11], "specker-certificate");
  CHECK(get(closure, "n").value == "11");
}

TEST_CASE("unresolved names surface as command errors") {
  const Scenario sc = parse_scenario("find-distinct ghost fuel=8\n");
  const RunResult out = run_scenario(sc, RunDefaults{});
  REQUIRE(out.reports.size() == 1);
  CHECK(out.had_error);
  CHECK(get(out.reports[0], "outcome").value == "error");
}

TEST_CASE("reports render and parse back unchanged") {
  const Scenario sc = parse_scenario(kCorpus);
  const RunResult out = run_scenario(sc, RunDefaults{});
  const std::string text = render_reports(out.reports);
  const std::vector<ReportNode> back = parse_reports(text);
  REQUIRE(back.size() == out.reports.size());
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(node_equal(back[i], out.reports[i]));
  CHECK(render_reports(back) == text);
}

TEST_CASE("malformed report text is rejected") {
  CHECK_THROWS_AS(parse_reports(""), ParseError);
  CHECK_THROWS_AS(parse_reports("not a header\n"), ParseError);
  CHECK_THROWS_AS(parse_reports("crlab-report v1\n   odd: indent\n"), ParseError);
  CHECK_THROWS_AS(parse_reports("crlab-report v1\nreport:\n    skipped: level\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_reports("crlab-report v1\nno colon\n"), ParseError);
}

TEST_CASE("every corpus witness passes verification") {
  const Scenario sc = parse_scenario(kCorpus);
  const RunResult out = run_scenario(sc, RunDefaults{});
  const auto results = verify_reports(parse_reports(render_reports(out.reports)));
  CHECK(results.size() >= 8);  // apartness, memberships, overlap, specker certs
  for (const auto& r : results) CHECK(r.pass);
}

TEST_CASE("verification of an empty report is vacuous") {
  CHECK(verify_reports(parse_reports("crlab-report v1\n")).empty());
}

TEST_CASE("a tampered witness fails verification by name") {
  const Scenario sc = parse_scenario("func id = x on [0,1]\nfind-distinct id fuel=64\n");
  const RunResult out = run_scenario(sc, RunDefaults{});
  std::string text = render_reports(out.reports);
  const std::string honest = "gap_lower_bound: 3/16";
  const std::size_t at = text.find(honest);
  REQUIRE(at != std::string::npos);
  text.replace(at, honest.size(), "gap_lower_bound: 5/16");
  bool any_fail = false;
  for (const auto& r : verify_reports(parse_reports(text))) {
    if (!r.pass) {
      any_fail = true;
      CHECK(r.description.find("distinct-value") != std::string::npos);
    }
  }
  CHECK(any_fail);
}

TEST_CASE("two runs of the same scenario are byte-identical") {
  const Scenario sc = parse_scenario(kCorpus);
  const std::string a = render_reports(run_scenario(sc, RunDefaults{}).reports);
  const std::string b = render_reports(run_scenario(sc, RunDefaults{}).reports);
  CHECK(a == b);
  // Re-parsing the scenario text must not change anything either.
  const Scenario sc2 = parse_scenario(kCorpus);
  CHECK(render_reports(run_scenario(sc2, RunDefaults{}).reports) == a);
}

TEST_CASE("defaults flow into commands that omit fuel") {
  RunDefaults d;
  d.search_fuel = 5;  // one unit short of the identity witness
  const Scenario sc = parse_scenario("func id = x on [0,1]\nfind-distinct id\n");
  const RunResult out = run_scenario(sc, d);
  CHECK(get(out.reports[0], "outcome").value == "exhausted");
  CHECK(get(out.reports[0], "fuel_spent").value == "5");
}

}  // TEST_SUITE
