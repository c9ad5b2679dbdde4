#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sib/dynamics.hpp"
#include "sib/geometry.hpp"
#include "sib/minimal_time.hpp"

namespace sib {

struct Tolerances {
  // Relative slack for the active index set I(x).
  double active = 1e-9;
  // A target with T_i(x) <= zero (1 + |x|) selects the zero subgradient.
  double zero = 1e-9;
  // Membership slack for iterates and normal-cone tests.
  double membership = 1e-9;

  bool operator==(const Tolerances&) const = default;
};

/// Generalized smallest intersecting ball instance: minimise
/// T(x) = max_i T_i(x) over x in the constraint, where T_i is the minimal
/// time from x to target i under the dynamic.
struct SibProblem {
  SibProblem(PolyhedralDynamic dynamic, std::vector<ConvexBody> targets, ConvexBody constraint,
             Tolerances tolerances = {}, InnerConfig inner = {});

  PolyhedralDynamic dynamic;
  std::vector<ConvexBody> targets;
  ConvexBody constraint;
  Tolerances tolerances;
  InnerConfig inner;

  Eigen::Index dimension() const { return dynamic.dimension(); }
};

bool operator==(const SibProblem& a, const SibProblem& b);

struct ObjectiveEval {
  double value = 0.0;
  std::vector<MinTimeResult> per_target;
  // Targets attaining the max within the active tolerance, ascending.
  std::vector<std::size_t> active;
};

enum class StepKind { kOneOverK, kCOverKPlusK0 };

// Both kinds are divergent-sum / square-summable.
struct StepSchedule {
  StepKind kind = StepKind::kOneOverK;
  double c = 1.0;   // c_over_k_plus_k0 only
  long k0 = 0;      // c_over_k_plus_k0 only

  double alpha(long k) const;
  bool operator==(const StepSchedule&) const = default;
};

struct SolverConfig {
  Vector x0;
  StepSchedule step;
  long max_iters = 1000;
  // Iterates with k % trace_every == 0 are recorded.
  long trace_every = 1;
  // Reserved for randomized tie-breaks; the default path is deterministic.
  std::uint64_t seed = 0;
  bool check_nondegeneracy = true;

  bool operator==(const SolverConfig& o) const {
    return same_vector(x0, o.x0) && step == o.step && max_iters == o.max_iters &&
           trace_every == o.trace_every && seed == o.seed &&
           check_nondegeneracy == o.check_nondegeneracy;
  }
};

struct TraceRow {
  long k = 0;
  Vector x;
  double value = 0.0;         // T(x_k)
  double best = 0.0;          // V_k
  std::size_t active_index = 0;
  double alpha = 0.0;
  Vector subgradient;
};

struct SolveReport {
  Vector x_best;
  double v_best = 0.0;
  std::vector<TraceRow> trace;
  long iterations_run = 0;
  double bound_certificate = 0.0;
  bool nondegenerate = true;
  std::vector<std::string> warnings;
};

ObjectiveEval objective(const SibProblem& problem, const Vector& x);

/// An element of the subdifferential of T at x, built from the first active
/// target i. Returns 0 when T_i(x) is below the zero tolerance. Otherwise
/// returns -a_j / b_j for the first active gauge face j at (w - x), w being
/// the target witness, that also lies in the normal cone of target i at w.
/// If no single face qualifies, searches the convex hull of the active faces
/// for a normal-cone element. Throws SubgradientSelectionError if none exists
/// within 1e-6.
Vector select_subgradient(const SibProblem& problem, const Vector& x, const ObjectiveEval& eval);

// x_{k+1} = P(x_k - alpha_k g; constraint).
Vector step(const SibProblem& problem, const SolverConfig& config, long k, const Vector& x,
            const Vector& g);

/// Projected subgradient method with V_k = min_{j<=k} T(x_j) bookkeeping.
/// Runs exactly config.max_iters iterations. Deterministic for a fixed config.
SolveReport solve(const SibProblem& problem, const SolverConfig& config);

// (D^2 + L^2 sum alpha_i^2) / (2 sum alpha_i), sums over i = 1..k.
double error_bound(const StepSchedule& schedule, long k, double D, double L);
double error_bound(const SolverConfig& config, long k, double D, double L);

// x is feasible (within tol) and (x + rF) meets every target.
bool certify(const SibProblem& problem, const Vector& x, double r, double tol);

// Coarse-grid test of the nondegeneracy condition: no constraint point has
// every T_i at zero. Returns true when the condition appears to hold.
bool check_nondegenerate(const SibProblem& problem);

}  // namespace sib
