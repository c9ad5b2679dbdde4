#include "sib/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sib {

namespace {

// Active-face tolerance used when the witness came from the inner solver.
constexpr double kInexactActiveTol = 1e-3;
// Acceptance slack for the convex-hull fallback in select_subgradient.
constexpr double kFallbackConeTol = 1e-6;
constexpr int kFallbackIterations = 200;
constexpr int kSelectionRetries = 3;

// Euclidean projection onto the probability simplex (sort-based).
Vector project_simplex(const Vector& y) {
  Vector sorted = y;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).cwiseMax(0.0).matrix();
}

// support(Q, g) - <g, w>: zero exactly when g is in N(w; Q).
double cone_gap(const ConvexBody& target, const Vector& w, const Vector& g) {
  return support(target, g) - g.dot(w);
}

// Minimises the normal-cone gap of g(lambda) = -sum_j lambda_j v_j over the
// simplex by projected subgradient steps; returns the best g found.
Vector convex_hull_search(const ConvexBody& target, const Vector& w,
                          const std::vector<Vector>& generators) {
  const auto m = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXd basis(w.size(), m);
  for (Eigen::Index j = 0; j < m; ++j) basis.col(j) = -generators[static_cast<std::size_t>(j)];

  Vector lambda = Vector::Constant(m, 1.0 / static_cast<double>(m));
  Vector best_g = basis * lambda;
  double best_gap = cone_gap(target, w, best_g);
  const double scale = std::max(1e-12, basis.colwise().norm().maxCoeff() *
                                           std::max(1.0, diameter(target)));

  for (int t = 1; t <= kFallbackIterations && best_gap > 0.0; ++t) {
    const Vector g = basis * lambda;
    // d gap / d lambda_j = <y*(g) - w, basis_j> with y* a support point.
    const Vector slope = basis.transpose() * (support_point(target, g) - w);
    lambda = project_simplex(lambda - (1.0 / (scale * std::sqrt(static_cast<double>(t)))) * slope);
    const Vector candidate = basis * lambda;
    const double gap = cone_gap(target, w, candidate);
    if (gap < best_gap) {
      best_gap = gap;
      best_g = candidate;
    }
  }
  return best_g;
}

void validate_config(const SibProblem& problem, const SolverConfig& config) {
  if (config.x0.size() != problem.dimension()) throw DimensionError("solver: x0 dimension mismatch");
  require_finite(config.x0, "solver x0");
  if (config.max_iters < 1) throw ValidationError("solver: max_iters must be >= 1");
  if (config.trace_every < 1) throw ValidationError("solver: trace_every must be >= 1");
  if (config.step.kind == StepKind::kCOverKPlusK0) {
    if (!(config.step.c > 0.0) || !std::isfinite(config.step.c)) {
      throw ValidationError("solver: step c must be > 0");
    }
    if (config.step.k0 < 0) throw ValidationError("solver: step k0 must be >= 0");
  }
}

ObjectiveEval objective_with(const SibProblem& problem, const Vector& x, const InnerConfig& inner) {
  ObjectiveEval eval;
  eval.per_target.reserve(problem.targets.size());
  for (const ConvexBody& target : problem.targets) {
    eval.per_target.push_back(minimal_time(problem.dynamic, target, x, inner));
    eval.value = std::max(eval.value, eval.per_target.back().value);
  }
  const double cutoff = eval.value - problem.tolerances.active * (1.0 + eval.value);
  for (std::size_t i = 0; i < eval.per_target.size(); ++i) {
    if (eval.per_target[i].value >= cutoff) eval.active.push_back(i);
  }
  return eval;
}

}  // namespace

SibProblem::SibProblem(PolyhedralDynamic dynamic_in, std::vector<ConvexBody> targets_in,
                       ConvexBody constraint_in, Tolerances tolerances_in, InnerConfig inner_in)
    : dynamic(std::move(dynamic_in)),
      targets(std::move(targets_in)),
      constraint(std::move(constraint_in)),
      tolerances(tolerances_in),
      inner(inner_in) {
  const Eigen::Index n = dynamic.dimension();
  if (targets.empty()) throw ValidationError("problem: need at least one target");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string where = "target " + std::to_string(i);
    if (targets[i].dimension() != n) throw DimensionError(where + ": dimension mismatch");
    if (!targets[i].is_bounded()) {
      throw ValidationError(where + ": targets must be bounded (point, box or ball)");
    }
  }
  if (constraint.dimension() != n) throw DimensionError("constraint: dimension mismatch");
  for (double tol : {tolerances.active, tolerances.zero, tolerances.membership}) {
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ValidationError("tolerances must be finite and >= 0");
  }
  if (inner.max_inner < 0) throw ValidationError("inner: max_inner must be >= 0");
  if (!(inner.step_scale >= 0.0)) throw ValidationError("inner: step must be >= 0");
}

bool operator==(const SibProblem& a, const SibProblem& b) {
  return a.dynamic == b.dynamic && a.targets == b.targets && a.constraint == b.constraint &&
         a.tolerances == b.tolerances && a.inner.max_inner == b.inner.max_inner &&
         a.inner.step_scale == b.inner.step_scale;
}

double StepSchedule::alpha(long k) const {
  switch (kind) {
    case StepKind::kOneOverK:
      return 1.0 / static_cast<double>(k);
    case StepKind::kCOverKPlusK0:
      return c / static_cast<double>(k + k0);
  }
  return 0.0;
}

ObjectiveEval objective(const SibProblem& problem, const Vector& x) {
  if (x.size() != problem.dimension()) throw DimensionError("objective: dimension mismatch");
  return objective_with(problem, x, problem.inner);
}

Vector select_subgradient(const SibProblem& problem, const Vector& x, const ObjectiveEval& eval) {
  if (eval.active.empty()) throw PreconditionError("select_subgradient: empty active set");
  const std::size_t i = eval.active.front();
  const MinTimeResult& result = eval.per_target.at(i);
  const ConvexBody& target = problem.targets.at(i);

  if (result.value <= problem.tolerances.zero * (1.0 + x.norm())) return Vector::Zero(x.size());

  const Vector u = result.witness - x;
  const double cone_tol = std::max(problem.tolerances.membership, 1e-12);
  for (const Vector& v : gauge_subgrad_generators(problem.dynamic, u, problem.tolerances.active)) {
    const Vector g = -v;
    if (normal_cone_contains(target, result.witness, g, cone_tol)) return g;
  }

  const double hull_tol = result.exact ? problem.tolerances.active : kInexactActiveTol;
  const std::vector<Vector> generators = gauge_subgrad_generators(problem.dynamic, u, hull_tol);
  const Vector g = convex_hull_search(target, result.witness, generators);
  if (normal_cone_contains(target, result.witness, g, std::max(cone_tol, kFallbackConeTol))) return g;

  throw SubgradientSelectionError("select_subgradient: no element of -d rho_F(w - x) lies in the "
                                  "normal cone of target " + std::to_string(i) + " at its witness");
}

Vector step(const SibProblem& problem, const SolverConfig& config, long k, const Vector& x,
            const Vector& g) {
  if (k < 1) throw PreconditionError("step: k must be >= 1");
  return euclidean_project(problem.constraint, x - config.step.alpha(k) * g);
}

double error_bound(const StepSchedule& schedule, long k, double D, double L) {
  if (k < 1) throw PreconditionError("error_bound: k must be >= 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long i = 1; i <= k; ++i) {
    const double a = schedule.alpha(i);
    sum += a;
    sum_sq += a * a;
  }
  return (D * D + L * L * sum_sq) / (2.0 * sum);
}

double error_bound(const SolverConfig& config, long k, double D, double L) {
  return error_bound(config.step, k, D, L);
}

bool certify(const SibProblem& problem, const Vector& x, double r, double tol) {
  if (!(r >= 0.0)) throw PreconditionError("certify: r must be >= 0");
  if (!contains(problem.constraint, x, tol)) return false;
  return std::all_of(problem.targets.begin(), problem.targets.end(), [&](const ConvexBody& target) {
    return reaches_within(problem.dynamic, target, x, r, tol, problem.inner);
  });
}

bool check_nondegenerate(const SibProblem& problem) {
  const Eigen::Index n = problem.dimension();
  const BoundingBox bounds = bounding_box(problem.constraint);
  const int per_axis = n <= 2 ? 100 : 20;
  const Vector extent = bounds.upper - bounds.lower;

  std::vector<int> index(static_cast<std::size_t>(n), 0);
  Vector x(n);
  while (true) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x[j] = bounds.lower[j] + extent[j] * index[static_cast<std::size_t>(j)] / per_axis;
    }
    if (contains(problem.constraint, x, 0.0)) {
      const double zero_tol = problem.tolerances.zero * (1.0 + x.norm());
      const bool all_zero =
          std::all_of(problem.targets.begin(), problem.targets.end(), [&](const ConvexBody& t) {
            return minimal_time(problem.dynamic, t, x, problem.inner).value <= zero_tol;
          });
      if (all_zero) return false;
    }
    Eigen::Index j = 0;
    while (j < n && ++index[static_cast<std::size_t>(j)] > per_axis) {
      index[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == n) break;
  }
  return true;
}

SolveReport solve(const SibProblem& problem, const SolverConfig& config) {
  validate_config(problem, config);
  const double membership = problem.tolerances.membership;
  if (!contains(problem.constraint, config.x0, membership * (1.0 + config.x0.norm()))) {
    throw PreconditionError("solve: x0 is not in the constraint set");
  }

  SolveReport report;
  if (config.check_nondegeneracy) {
    if (problem.constraint.is_bounded() && problem.dimension() <= 3) {
      report.nondegenerate = check_nondegenerate(problem);
      if (!report.nondegenerate) {
        report.warnings.push_back(
            "degenerate instance: some constraint point reaches every target at time 0; the optimal "
            "value is 0 and the minimiser need not describe a smallest intersecting ball");
      }
    } else {
      report.warnings.push_back("nondegeneracy not checked (unbounded constraint or dimension > 3)");
    }
  }

  Vector x = config.x0;
  report.v_best = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= config.max_iters; ++k) {
    InnerConfig inner = problem.inner;
    ObjectiveEval eval = objective_with(problem, x, inner);
    Vector g;
    for (int attempt = 0;; ++attempt) {
      try {
        g = select_subgradient(problem, x, eval);
        break;
      } catch (const SubgradientSelectionError&) {
        if (attempt >= kSelectionRetries) throw;
        inner.max_inner *= 4;
        eval = objective_with(problem, x, inner);
      }
    }

    if (eval.value < report.v_best) {
      report.v_best = eval.value;
      report.x_best = x;
    }
    const double alpha = config.step.alpha(k);
    if (k % config.trace_every == 0) {
      report.trace.push_back({k, x, eval.value, report.v_best, eval.active.front(), alpha, g});
    }
    report.iterations_run = k;
    x = step(problem, config, k, x, g);
  }

  report.bound_certificate = error_bound(config, report.iterations_run, diameter(problem.constraint),
                                         lipschitz_bound(problem.dynamic));
  return report;
}

}  // namespace sib
