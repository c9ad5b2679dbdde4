#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sib/dynamics.hpp"
#include "sib/geometry.hpp"
#include "sib/solver.hpp"

namespace sib {

// Randomized invariant suites for a dynamic, its targets and a problem.
// Every suite draws from its own generator seeded by (seed, suite name), so
// results do not depend on which other suites ran.

struct CheckOptions {
  long cases = 200;
  std::uint64_t seed = 20240601;
  // Grid resolution for the sublevel-shift comparison.
  double sublevel_h = 0.01;
  // Grid resolution for minimal-time oracle agreement.
  double oracle_h = 0.02;
  long oracle_cases = 50;
};

struct CheckResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  // Largest observed violation (<= 0 when every case holds with margin).
  double worst = -std::numeric_limits<double>::infinity();

  bool passed() const { return failures == 0 && cases > 0; }
};

// Slack allowed for minimal-time values computed by the inner solver.
inline constexpr double kIterativeTol = 1e-4;

// Homogeneity, subadditivity, zero set vs recession cone, Lipschitz bound,
// subgradient inequality, scaling membership, and scan-oracle agreement.
std::vector<CheckResult> check_dynamic(const PolyhedralDynamic& dyn, const CheckOptions& options);

// Convexity, Lipschitz, translation estimate, witness validity, oracle
// agreement, and sublevel shift (closed-form paths) for one target. Points
// are sampled from `region`.
std::vector<CheckResult> check_target(const PolyhedralDynamic& dyn, const ConvexBody& target,
                                      const BoundingBox& region, const CheckOptions& options,
                                      const std::string& label);

// Subgradient inequality and norm bound for solver-selected subgradients at
// random feasible points.
std::vector<CheckResult> check_solver(const SibProblem& problem, const CheckOptions& options);

// Everything above over the problem's dynamic and every target.
std::vector<CheckResult> check_problem(const SibProblem& problem, const CheckOptions& options);

// Bounding box of the bounded bodies of the problem, inflated by 10% + 1.
BoundingBox sampling_region(const SibProblem& problem);

}  // namespace sib
