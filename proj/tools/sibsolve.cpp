// sibsolve: command-line front end for the smallest intersecting ball solver.
//
//   sibsolve solve  <scenario> [--trace FILE] [--svg FILE] [--iters N] [--precision P]
//   sibsolve oracle <scenario> [--grid H]
//   sibsolve check  <scenario> [--cases N] [--seed S]
//
// Exit codes: 0 success, 1 invalid scenario, 2 runtime failure (including a
// failed invariant check).

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sib/checks.hpp"
#include "sib/oracle.hpp"
#include "sib/scenario.hpp"

namespace {

std::string format_point(const sib::Vector& x, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << '(';
  for (Eigen::Index j = 0; j < x.size(); ++j) out << (j ? "," : "") << x[j];
  out << ')';
  return out.str();
}

int run_solve(const std::string& path, const std::string& trace, const std::string& svg, long iters,
              int precision) {
  sib::Scenario scenario = sib::load_scenario(path);
  if (iters > 0) scenario.solver.max_iters = iters;
  const sib::SolveReport report = sib::solve(scenario.problem, scenario.solver);
  for (const std::string& warning : report.warnings) std::cerr << "warning: " << warning << '\n';

  if (!trace.empty()) sib::emit_trace(report, trace, precision);
  if (!svg.empty()) sib::emit_svg(scenario.problem, report, svg);
  std::cout << std::fixed << std::setprecision(precision) << "value=" << report.v_best
            << " x=" << format_point(report.x_best, precision) << " bound=" << report.bound_certificate
            << '\n';
  return 0;
}

int run_oracle(const std::string& path, double grid, int precision) {
  const sib::Scenario scenario = sib::load_scenario(path);
  const double h = grid > 0.0 ? grid : scenario.oracle.grid;
  const sib::OracleResult result = sib::grid_minimize(scenario.problem, h);
  std::cout << std::fixed << std::setprecision(precision) << "value=" << result.value
            << " x=" << format_point(result.argmin, precision) << " grid=" << h
            << " points=" << result.points_evaluated << '\n';
  return 0;
}

int run_check(const std::string& path, long cases, std::uint64_t seed) {
  const sib::Scenario scenario = sib::load_scenario(path);
  sib::CheckOptions options;
  options.cases = cases;
  options.seed = seed;
  bool ok = true;
  for (const sib::CheckResult& r : sib::check_problem(scenario.problem, options)) {
    ok = ok && r.passed();
    std::cout << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(44) << r.name << " cases=" << r.cases
              << " failures=" << r.failures << " worst=" << std::scientific << std::setprecision(2)
              << r.worst << std::defaultfloat << '\n';
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smallest intersecting ball solver for polyhedral dynamics"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string svg_path;
  long iters = 0;
  int precision = 6;
  auto* solve = app.add_subcommand("solve", "Run the projected subgradient method");
  solve->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  solve->add_option("--trace", trace_path, "Write the iterate trace CSV");
  solve->add_option("--svg", svg_path, "Write an SVG picture of the instance and solution (2D)");
  solve->add_option("--iters", iters, "Override solver.max_iters")->check(CLI::PositiveNumber);
  solve->add_option("--precision", precision, "Decimal places in output")->check(CLI::Range(0, 17));

  double grid = 0.0;
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid minimisation over the constraint");
  oracle->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  oracle->add_option("--grid", grid, "Grid spacing (default: scenario oracle.grid)")->check(CLI::PositiveNumber);
  oracle->add_option("--precision", precision, "Decimal places in output")->check(CLI::Range(0, 17));

  long cases = 200;
  std::uint64_t seed = sib::CheckOptions{}.seed;
  auto* check = app.add_subcommand("check", "Run the randomized invariant suites on the scenario");
  check->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  check->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(scenario_path, trace_path, svg_path, iters, precision);
    if (*oracle) return run_oracle(scenario_path, grid, precision);
    if (*check) return run_check(scenario_path, cases, seed);
  } catch (const sib::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
