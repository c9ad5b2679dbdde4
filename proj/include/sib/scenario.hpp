#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sib/solver.hpp"

namespace sib {

struct OracleConfig {
  double grid = 0.01;
  bool operator==(const OracleConfig&) const = default;
};

// A problem instance plus run settings, as stored in a scenario JSON file.
struct Scenario {
  SibProblem problem;
  SolverConfig solver;
  OracleConfig oracle;
};

// Throws ParseError ("<json path>: message") on malformed input and
// ValidationError when the data violates a problem invariant.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Pretty-printed JSON that parses back to an identical scenario. Boxes are
// written in lower/upper form.
std::string serialize_scenario(const Scenario& scenario);

// CSV: k,x_1,...,x_n,T,V_k,active_index,alpha_k with fixed `precision`
// decimals; one row per traced iterate.
void write_trace(const SolveReport& report, std::ostream& out, int precision = 6);
void emit_trace(const SolveReport& report, const std::filesystem::path& path, int precision = 6);

// Standalone SVG of a 2D instance: constraint, targets, iterate polyline and
// the x_best marker. Throws UnsupportedError for n != 2.
std::string render_svg(const SibProblem& problem, const SolveReport* report);
void emit_svg(const SibProblem& problem, const SolveReport& report, const std::filesystem::path& path);

}  // namespace sib
