// crlab: run constructive-analysis scenarios and re-check their witnesses.
//
// Exit codes: 0 success (exhausted searches included), 1 usage or parse
// error, 2 witness verification failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "creal/scenario.hpp"
#include "creal/specker.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cra::Error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive real analysis lab"};
  app.require_subcommand(1);

  std::string path;
  bool machine = false;
  cra::RunDefaults defaults;

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("file", path, "scenario file")->required();
  run->add_flag("--machine", machine, "machine-readable report on stdout");
  run->add_option("--fuel", defaults.search_fuel, "default search fuel");
  run->add_option("--depth", defaults.depth, "default refuter depth");
  run->add_option("--slice", defaults.member_slice, "default membership slice");
  run->add_option("--decimals", defaults.decimals, "decimal preview digits");

  auto* verify = app.add_subcommand("verify", "re-check witnesses in a report");
  verify->add_option("file", path, "machine report file")->required();

  std::string expr_text, at_kw, x_text, prec_kw;
  unsigned prec = 20;
  auto* eval = app.add_subcommand("eval", "evaluate an expression at a rational");
  eval->add_option("expr", expr_text)->required();
  eval->add_option("at", at_kw)->required();
  eval->add_option("x", x_text)->required();
  eval->add_option("prec-kw", prec_kw)->required();
  eval->add_option("n", prec)->required();
  eval->add_option("--decimals", defaults.decimals, "decimal preview digits");

  std::string source_name, term_kw;
  unsigned term_k = 0;
  auto* specker = app.add_subcommand("specker", "query a builtin specker stream");
  specker->add_option("source", source_name, "empty | collatz")->required();
  specker->add_option("term-kw", term_kw)->required();
  specker->add_option("k", term_k)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const cra::Scenario sc = cra::parse_scenario(read_file(path));
      const cra::RunResult result = cra::run_scenario(sc, defaults);
      if (machine) {
        std::cout << cra::render_reports(result.reports);
      } else {
        std::cout << cra::render_reports(result.reports);
        std::size_t found = 0, exhausted = 0, errors = 0;
        for (const auto& r : result.reports) {
          const auto* o = r.find("outcome");
          if (!o) continue;
          if (o->value == "found") ++found;
          else if (o->value == "exhausted") ++exhausted;
          else if (o->value == "error") ++errors;
        }
        std::cout << "== " << result.reports.size() << " reports: " << found
                  << " found, " << exhausted << " exhausted, " << errors
                  << " errors\n";
      }
      return result.had_error ? 1 : 0;
    }
    if (*verify) {
      const auto reports = cra::parse_reports(read_file(path));
      const auto results = cra::verify_reports(reports);
      bool all_pass = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.description << "\n";
        all_pass = all_pass && r.pass;
      }
      std::cout << (all_pass ? "verify: pass" : "verify: FAIL") << " ("
                << results.size() << " witnesses)\n";
      return all_pass ? 0 : 2;
    }
    if (*eval) {
      if (at_kw != "at" || prec_kw != "prec")
        throw cra::Error("usage: crlab eval <expr> at <rational> prec <n>");
      const cra::ExprPtr e = cra::parse_expr(expr_text);
      const cra::Rational x = cra::Rational::parse(x_text);
      const cra::CFunc f{e, cra::RatInterval(x - cra::Rational(1),
                                                 x + cra::Rational(1))};
      const cra::Rational v =
          cra::eval_at(f, cra::CReal::from_rational(x)).approx(prec);
      std::cout << v.str() << " ~ " << v.decimal(defaults.decimals) << " (within 2^-"
                << prec << ")\n";
      return 0;
    }
    if (*specker) {
      if (term_kw != "term")
        throw cra::Error("usage: crlab specker <source> term <k>");
      cra::HaltingSource src;
      if (source_name == "empty") src = cra::empty_source();
      else if (source_name == "collatz") src = cra::collatz_source();
      else throw cra::Error("unknown source '" + source_name + "'");
      const cra::SpeckerStream stream(std::move(src));
      const cra::Rational s = stream.term(term_k);
      std::cout << "s_" << term_k << " = " << s.str() << " ~ "
                << s.decimal(defaults.decimals) << "\n";
      return 0;
    }
  } catch (const cra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
