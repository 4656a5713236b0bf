#include "creal/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "creal/refuter.hpp"
#include "creal/witness_search.hpp"

namespace cra {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string drop_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

[[noreturn]] void fail(const std::string& msg, std::size_t line) {
  throw ParseError(msg, line, 1);
}

// "[(a,b),(c,d)]" (spaces ignored) -> {{"a","b"},{"c","d"}}
std::vector<std::pair<std::string, std::string>> parse_pair_list(const std::string& text,
                                                                 std::size_t line) {
  const std::string s = drop_spaces(text);
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c)
      fail(std::string("expected '") + c + "' in list", line);
    ++i;
  };
  expect('[');
  while (i < s.size() && s[i] != ']') {
    expect('(');
    const std::size_t comma = s.find(',', i);
    const std::size_t close = s.find(')', i);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      fail("malformed list entry", line);
    out.emplace_back(s.substr(i, comma - i), s.substr(comma + 1, close - comma - 1));
    i = close + 1;
    if (i < s.size() && s[i] == ',') ++i;
  }
  expect(']');
  if (i != s.size()) fail("trailing characters after list", line);
  return out;
}

// "[lo,hi]" -> RatInterval
RatInterval parse_bounds(const std::string& text, std::size_t line) {
  const std::string s = drop_spaces(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail("expected [lo,hi]", line);
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) fail("expected [lo,hi]", line);
  try {
    return RatInterval(Rational::parse(s.substr(1, comma - 1)),
                       Rational::parse(s.substr(comma + 1, s.size() - comma - 2)));
  } catch (const Error& e) {
    fail(e.what(), line);
  }
}

Rational rat(const std::string& text, std::size_t line) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    fail(e.what(), line);
  }
}

unsigned long nat(const std::string& text, std::size_t line) {
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail("expected a natural number, got '" + text + "'", line);
  }
}

// Splits a command line into words; whitespace inside brackets or parens
// does not split.
std::vector<std::string> split_command(const std::string& line_text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line_text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

void parse_declaration(Scenario& sc, const std::string& keyword, const std::string& rest,
                       std::size_t line) {
  std::istringstream in(rest);
  std::string name;
  in >> name;
  if (name.empty()) fail("missing name after '" + keyword + "'", line);
  auto unique_name = [&] {
    if (sc.funcs.count(name) || sc.oracles.count(name) || sc.opensets.count(name) ||
        sc.streams.count(name))
      fail("duplicate name '" + name + "'", line);
  };
  unique_name();

  if (keyword == "specker") {
    std::string kw, source_name;
    in >> kw >> source_name;
    if (kw != "from") fail("expected 'specker NAME from SOURCE'", line);
    if (source_name == "empty")
      sc.streams[name] = std::make_shared<SpeckerStream>(empty_source());
    else if (source_name == "collatz")
      sc.streams[name] = std::make_shared<SpeckerStream>(collatz_source());
    else {
      auto it = sc.streams.find("source:" + source_name);
      if (it == sc.streams.end()) fail("unknown source '" + source_name + "'", line);
      sc.streams[name] = it->second;
    }
    return;
  }

  std::string eq;
  in >> eq;
  if (eq != "=") fail("expected '=' after the name", line);
  std::string body;
  std::getline(in, body);
  body = strip(body);

  if (keyword == "func") {
    const std::size_t on = body.rfind(" on ");
    if (on == std::string::npos) fail("expected 'func NAME = EXPR on [lo,hi]'", line);
    try {
      ExprPtr expr = parse_expr(body.substr(0, on));
      sc.funcs.emplace(name, CFunc{std::move(expr), parse_bounds(body.substr(on + 4), line)});
    } catch (const ParseError& e) {
      fail(std::string("in expression: ") + e.what(), line);
    }
  } else if (keyword == "oracle") {
    if (body.rfind("radius const ", 0) == 0) {
      sc.oracles.emplace(name, LocalityOracle::constant_radius(
                                   name, rat(strip(body.substr(13)), line)));
    } else if (body.rfind("radius table ", 0) == 0) {
      std::vector<std::pair<Rational, Rational>> entries;
      for (const auto& [c, r] : parse_pair_list(body.substr(13), line))
        entries.emplace_back(rat(c, line), rat(r, line));
      sc.oracles.emplace(name, LocalityOracle::table(name, std::move(entries)));
    } else {
      fail("expected 'radius const R' or 'radius table [...]'", line);
    }
  } else if (keyword == "openset") {
    if (body.rfind("balls ", 0) == 0) {
      std::vector<Ball> balls;
      for (const auto& [c, r] : parse_pair_list(body.substr(6), line))
        balls.push_back(Ball{rat(c, line), rat(r, line)});
      sc.opensets.emplace(name, OpenSet::finite(name, std::move(balls)));
    } else if (body.rfind("halfline_below(", 0) == 0 ||
               body.rfind("halfline_above(", 0) == 0) {
      const bool below = body[9] == 'b';
      const std::string s = drop_spaces(body);
      if (s.back() != ')') fail("expected ')'", line);
      const std::string args = s.substr(15, s.size() - 16);
      const std::size_t comma = args.find(',');
      if (comma == std::string::npos) fail("expected (t, step)", line);
      const Rational t = rat(args.substr(0, comma), line);
      const Rational step = rat(args.substr(comma + 1), line);
      sc.opensets.emplace(name, below ? OpenSet::halfline_below(name, t, step)
                                      : OpenSet::halfline_above(name, t, step));
    } else {
      fail("expected 'balls [...]' or 'halfline_below/above(t, step)'", line);
    }
  } else if (keyword == "source") {
    std::shared_ptr<SpeckerStream> stream;
    if (body == "empty")
      stream = std::make_shared<SpeckerStream>(empty_source());
    else if (body == "collatz")
      stream = std::make_shared<SpeckerStream>(collatz_source());
    else if (body.rfind("table ", 0) == 0) {
      std::vector<std::pair<unsigned, unsigned>> entries;
      for (const auto& [i, n] : parse_pair_list(body.substr(6), line))
        entries.emplace_back(static_cast<unsigned>(nat(i, line)),
                             static_cast<unsigned>(nat(n, line)));
      stream = std::make_shared<SpeckerStream>(table_source(name, std::move(entries)));
    } else {
      fail("expected 'empty', 'collatz', or 'table [...]'", line);
    }
    // Sources are stored as streams under a reserved key; 'specker NAME
    // from SOURCE' aliases them.
    sc.streams["source:" + name] = std::move(stream);
  } else {
    fail("unknown declaration '" + keyword + "'", line);
  }
}

const std::vector<std::string> kDeclarations = {"func", "oracle", "openset", "source",
                                                "specker"};
const std::vector<std::string> kVerbs = {
    "find-distinct", "refute-local", "refute-partition", "classify", "member",
    "eval",          "term",         "inA",              "refuteB",  "closure"};

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = strip(raw);
    if (raw.empty()) continue;
    std::istringstream ls(raw);
    std::string first;
    ls >> first;
    if (std::find(kDeclarations.begin(), kDeclarations.end(), first) !=
        kDeclarations.end()) {
      std::string rest;
      std::getline(ls, rest);
      parse_declaration(sc, first, rest, lineno);
      continue;
    }
    if (std::find(kVerbs.begin(), kVerbs.end(), first) == kVerbs.end())
      fail("unknown command '" + first + "'", lineno);
    Command cmd;
    cmd.verb = first;
    cmd.line = lineno;
    const std::vector<std::string> words = split_command(raw);
    for (std::size_t wi = 1; wi < words.size(); ++wi) {
      const std::string& word = words[wi];
      const std::size_t eq = word.find('=');
      if (eq != std::string::npos && eq > 0 &&
          std::isalpha(static_cast<unsigned char>(word[0])))
        cmd.kwargs[word.substr(0, eq)] = word.substr(eq + 1);
      else
        cmd.args.push_back(word);
    }
    sc.commands.push_back(std::move(cmd));
  }
  return sc;
}

namespace {

void rat_field(ReportNode& parent, const std::string& key, const Rational& v,
               unsigned decimals) {
  parent.child(key, v.str() + " ~ " + v.decimal(decimals));
}

void apartness_node(ReportNode& parent, const ApartnessWitness& w, unsigned dec) {
  ReportNode& n = parent.child("apartness");
  n.child("precision", std::to_string(w.precision));
  rat_field(n, "left_approx", w.left_approx, dec);
  rat_field(n, "right_approx", w.right_approx, dec);
  rat_field(n, "gap_lower_bound", w.gap_lower_bound, dec);
}

void membership_node(ReportNode& parent, const std::string& key,
                     const MembershipCert& c, unsigned dec) {
  ReportNode& n = parent.child(key);
  n.child("set", c.set_name);
  n.child("ball_index", std::to_string(c.ball_index));
  rat_field(n, "center", c.center, dec);
  rat_field(n, "radius", c.radius, dec);
  n.child("precision", std::to_string(c.precision));
  rat_field(n, "point_approx", c.point_approx, dec);
  rat_field(n, "margin", c.margin, dec);
}

void specker_cert_node(ReportNode& parent, const SpeckerCert& c, unsigned dec) {
  ReportNode& n = parent.child("specker-certificate");
  n.child("n", std::to_string(c.n));
  rat_field(n, "s_n", c.s_n, dec);
  rat_field(n, "x_approx", c.x_approx, dec);
  rat_field(n, "margin", c.margin, dec);
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Start: return "start";
    case Side::Left: return "left";
    default: return "right";
  }
}

class Runner {
public:
  Runner(const Scenario& sc, const RunDefaults& defaults)
      : sc_(sc), defaults_(defaults) {}

  RunResult run() {
    RunResult result;
    for (const Command& cmd : sc_.commands) {
      ReportNode report{"report", "", {}};
      try {
        dispatch(cmd, report);
      } catch (const Error& e) {
        report.child("outcome", "error");
        report.child("error", e.what());
        result.had_error = true;
      }
      result.reports.push_back(std::move(report));
    }
    return result;
  }

private:
  const Scenario& sc_;
  const RunDefaults& defaults_;

  const CFunc& func(const Command& cmd, std::size_t i) {
    auto it = sc_.funcs.find(arg(cmd, i));
    if (it == sc_.funcs.end()) fail("unknown function '" + arg(cmd, i) + "'", cmd.line);
    return it->second;
  }
  const LocalityOracle& oracle(const Command& cmd, std::size_t i) {
    auto it = sc_.oracles.find(arg(cmd, i));
    if (it == sc_.oracles.end()) fail("unknown oracle '" + arg(cmd, i) + "'", cmd.line);
    return it->second;
  }
  const OpenSet& openset(const Command& cmd, std::size_t i) {
    auto it = sc_.opensets.find(arg(cmd, i));
    if (it == sc_.opensets.end())
      fail("unknown open set '" + arg(cmd, i) + "'", cmd.line);
    return it->second;
  }
  DecompositionSets sets(const Command& cmd, std::size_t i) {
    auto it = sc_.streams.find(arg(cmd, i));
    if (it == sc_.streams.end())
      fail("unknown specker stream '" + arg(cmd, i) + "'", cmd.line);
    return DecompositionSets{it->second};
  }

  static const std::string& arg(const Command& cmd, std::size_t i) {
    if (i >= cmd.args.size()) fail("missing argument", cmd.line);
    return cmd.args[i];
  }

  unsigned long kw_nat(const Command& cmd, const std::string& key,
                       unsigned long fallback) {
    auto it = cmd.kwargs.find(key);
    return it == cmd.kwargs.end() ? fallback : nat(it->second, cmd.line);
  }
  Rational kw_rat(const Command& cmd, const std::string& key) {
    auto it = cmd.kwargs.find(key);
    if (it == cmd.kwargs.end()) fail("missing '" + key + "='", cmd.line);
    return rat(it->second, cmd.line);
  }
  RatInterval kw_bounds(const Command& cmd) {
    auto it = cmd.kwargs.find("bounds");
    if (it == cmd.kwargs.end()) fail("missing 'bounds='", cmd.line);
    return parse_bounds(it->second, cmd.line);
  }

  void dispatch(const Command& cmd, ReportNode& report) {
    const unsigned dec = defaults_.decimals;
    if (cmd.verb == "find-distinct") {
      const CFunc& f = func(cmd, 0);
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.search_fuel);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " fuel=" +
                                  std::to_string(fuel));
      auto res = find_distinct(f, Fuel{fuel});
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) {
        ReportNode& w = report.child("distinct-value");
        rat_field(w, "p", res.witness->p, dec);
        rat_field(w, "q", res.witness->q, dec);
        rat_field(w, "domain_lo", f.domain.lo(), dec);
        rat_field(w, "domain_hi", f.domain.hi(), dec);
        apartness_node(w, res.witness->value_witness, dec);
      }
    } else if (cmd.verb == "refute-local") {
      const CFunc& f = func(cmd, 0);
      const LocalityOracle& o = oracle(cmd, 1);
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.search_fuel);
      const std::size_t depth = kw_nat(cmd, "depth", defaults_.depth);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " " + arg(cmd, 1) +
                                  " fuel=" + std::to_string(fuel) +
                                  " depth=" + std::to_string(depth));
      auto res = refute_locality(f, o, Fuel{fuel}, depth);
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) {
        // Deterministic re-derivation of the run behind the contradiction.
        auto dw = find_distinct(f, Fuel{fuel});
        NestedRun run = bisect_run(f, *dw.witness, res.witness->inner_stage);
        ReportNode& stages = report.child("run");
        for (std::size_t k = 0; k < run.stages.size(); ++k) {
          ReportNode& st = stages.child("stage");
          st.child("index", std::to_string(k));
          rat_field(st, "lo", run.stages[k].interval.lo(), dec);
          rat_field(st, "hi", run.stages[k].interval.hi(), dec);
          rat_field(st, "width", run.stages[k].interval.width(), dec);
          rat_field(st, "gap_bound", run.stages[k].gap_bound, dec);
          st.child("side", side_name(run.stages[k].side));
        }
        const LocalityContradiction& c = *res.witness;
        ReportNode& n = report.child("contradiction");
        rat_field(n, "center", c.center, dec);
        rat_field(n, "claimed_radius", c.claimed_radius, dec);
        n.child("precision", std::to_string(c.precision));
        n.child("inner_stage", std::to_string(c.inner_stage));
        rat_field(n, "stage_lo", c.stage_interval.lo(), dec);
        rat_field(n, "stage_hi", c.stage_interval.hi(), dec);
        apartness_node(n, c.endpoint_gap, dec);
      }
    } else if (cmd.verb == "refute-partition") {
      const OpenSet& A = openset(cmd, 0);
      const OpenSet& B = openset(cmd, 1);
      const RatInterval bounds = kw_bounds(cmd);
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.partition_fuel);
      const unsigned long slice = kw_nat(cmd, "slice", defaults_.member_slice);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " " + arg(cmd, 1) +
                                  " bounds=[" + bounds.lo().str() + "," +
                                  bounds.hi().str() + "] fuel=" + std::to_string(fuel) +
                                  " slice=" + std::to_string(slice));
      auto res = refute_partition(A, B, bounds, Fuel{fuel}, Fuel{slice});
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) {
        if (const auto* overlap = std::get_if<OverlapViolation>(&*res.witness)) {
          report.child("violation", "overlap");
          ReportNode& n = report.child("overlap");
          rat_field(n, "point", overlap->point, dec);
          membership_node(n, "membership_a", overlap->cert_a, dec);
          membership_node(n, "membership_b", overlap->cert_b, dec);
        } else {
          const auto& gap = std::get<CoverageGap>(*res.witness);
          report.child("violation", "coverage-gap");
          ReportNode& n = report.child("coverage-gap");
          rat_field(n, "point", gap.point, dec);
          n.child("fuel_spent", std::to_string(gap.fuel_spent));
        }
      }
    } else if (cmd.verb == "classify") {
      const OpenSet& A = openset(cmd, 0);
      const OpenSet& B = openset(cmd, 1);
      const RatInterval bounds = kw_bounds(cmd);
      const unsigned long count = kw_nat(cmd, "count", 8);
      const unsigned long slice = kw_nat(cmd, "slice", defaults_.member_slice);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " " + arg(cmd, 1) +
                                  " bounds=[" + bounds.lo().str() + "," +
                                  bounds.hi().str() + "] count=" +
                                  std::to_string(count) +
                                  " slice=" + std::to_string(slice));
      report.child("outcome", "ok");
      for (const auto& c : classify_rationals(A, B, bounds, count, Fuel{slice})) {
        ReportNode& n = report.child("classification");
        rat_field(n, "point", c.point, dec);
        n.child("label", c.label == SetLabel::A   ? arg(cmd, 0)
                         : c.label == SetLabel::B ? arg(cmd, 1)
                                                  : "unknown");
        if (c.cert) membership_node(n, "membership", *c.cert, dec);
      }
    } else if (cmd.verb == "member") {
      const OpenSet& S = openset(cmd, 0);
      const Rational x = kw_rat(cmd, "x");
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.member_slice);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " x=" + x.str() +
                                  " fuel=" + std::to_string(fuel));
      auto res = member(S, CReal::from_rational(x), Fuel{fuel});
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) membership_node(report, "membership", *res.witness, dec);
    } else if (cmd.verb == "eval") {
      const CFunc& f = func(cmd, 0);
      const Rational x = kw_rat(cmd, "x");
      const unsigned long prec = kw_nat(cmd, "prec", 20);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " x=" + x.str() +
                                  " prec=" + std::to_string(prec));
      const Rational v = eval_at(f, CReal::from_rational(x))
                             .approx(static_cast<unsigned>(prec));
      report.child("outcome", "ok");
      report.child("precision", std::to_string(prec));
      rat_field(report, "value", v, dec);
    } else if (cmd.verb == "term") {
      DecompositionSets s = sets(cmd, 0);
      const unsigned long k = kw_nat(cmd, "k", 0);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " k=" + std::to_string(k));
      report.child("outcome", "ok");
      report.child("n", std::to_string(k));
      rat_field(report, "term", s.stream->term(static_cast<unsigned>(k)), dec);
    } else if (cmd.verb == "inA" || cmd.verb == "refuteB") {
      DecompositionSets s = sets(cmd, 0);
      const Rational x = kw_rat(cmd, "x");
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.specker_fuel);
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " x=" + x.str() +
                                  " fuel=" + std::to_string(fuel));
      auto res = cmd.verb == "inA"
                     ? in_A(s, CReal::from_rational(x), Fuel{fuel})
                     : refute_in_B(s, CReal::from_rational(x), Fuel{fuel});
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) specker_cert_node(report, *res.witness, dec);
    } else if (cmd.verb == "closure") {
      DecompositionSets s = sets(cmd, 0);
      const Rational limit = kw_rat(cmd, "limit");
      auto it = cmd.kwargs.find("seq");
      if (it == cmd.kwargs.end()) fail("missing 'seq='", cmd.line);
      std::vector<std::pair<Rational, unsigned>> seq;
      for (const auto& [p, i] : parse_pair_list(it->second, cmd.line))
        seq.emplace_back(rat(p, cmd.line), static_cast<unsigned>(nat(i, cmd.line)));
      const unsigned long fuel = kw_nat(cmd, "fuel", defaults_.specker_fuel);
      std::string seq_text = "[";
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) seq_text += ",";
        seq_text += "(" + seq[i].first.str() + "," + std::to_string(seq[i].second) + ")";
      }
      seq_text += "]";
      report.child("command", cmd.verb + " " + arg(cmd, 0) + " limit=" + limit.str() +
                                  " seq=" + seq_text + " fuel=" + std::to_string(fuel));
      auto res = closure_search(s, seq, CReal::from_rational(limit), Fuel{fuel});
      report.child("outcome", res.found() ? "found" : "exhausted");
      report.child("fuel_spent", std::to_string(res.fuel_spent));
      if (res.found()) specker_cert_node(report, *res.witness, dec);
    } else {
      fail("unknown command '" + cmd.verb + "'", cmd.line);
    }
  }
};

}  // namespace

RunResult run_scenario(const Scenario& scenario, const RunDefaults& defaults) {
  return Runner(scenario, defaults).run();
}

}  // namespace cra
