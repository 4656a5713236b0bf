#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "creal/func.hpp"
#include "creal/report.hpp"
#include "creal/specker.hpp"
#include "creal/topology.hpp"

namespace cra {

// Fuel defaults for commands that leave them implicit. All overridable
// per command and from the CLI.
struct RunDefaults {
  unsigned long search_fuel = 256;      // find-distinct
  unsigned long member_slice = 128;     // per-set membership slices
  unsigned long partition_fuel = 65536; // refute-partition total budget
  unsigned long specker_fuel = 512;     // inA / refuteB / closure
  std::size_t depth = 64;               // refuter max depth
  unsigned decimals = 6;                // decimal previews in reports
};

struct Command {
  std::string verb;
  std::vector<std::string> args;
  std::map<std::string, std::string> kwargs;
  std::size_t line = 0;
};

// Declarations by name plus the ordered command list.
struct Scenario {
  std::map<std::string, CFunc> funcs;
  std::map<std::string, LocalityOracle> oracles;
  std::map<std::string, OpenSet> opensets;
  std::map<std::string, std::shared_ptr<SpeckerStream>> streams;
  std::vector<Command> commands;
};

// Line-oriented scenario text; '#' starts a comment. Throws ParseError
// with the offending line.
Scenario parse_scenario(const std::string& text);

struct RunResult {
  std::vector<ReportNode> reports;
  bool had_error = false;
};

// Executes the commands in order. Deterministic: identical scenarios and
// defaults produce identical report trees.
RunResult run_scenario(const Scenario& scenario, const RunDefaults& defaults);

}  // namespace cra
