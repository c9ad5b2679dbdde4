#include "sib/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sib/minimal_time.hpp"
#include "sib/oracle.hpp"

namespace sib {

namespace {

class Suite {
 public:
  Suite(std::string name, const CheckOptions& options) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(options.seed),
                                     static_cast<std::uint32_t>(options.seed >> 32)};
    for (char ch : name) words.push_back(static_cast<unsigned char>(ch));
    std::seed_seq seq(words.begin(), words.end());
    rng_.seed(seq);
    result_.name = std::move(name);
  }

  // One case; violation > 0 is a failure.
  void record(double violation) {
    ++result_.cases;
    if (violation > 0.0 || std::isnan(violation)) ++result_.failures;
    result_.worst = std::max(result_.worst, violation);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Vector in_box(const BoundingBox& box) {
    Vector x(box.lower.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = uniform(box.lower[j], box.upper[j]);
    return x;
  }

  Vector in_cube(Eigen::Index n, double half) {
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = uniform(-half, half);
    return x;
  }

  CheckResult done() { return std::move(result_); }

 private:
  std::mt19937_64 rng_;
  CheckResult result_;
};

// Half-width of the cube used for gauge-level samples.
constexpr double kGaugeScale = 10.0;

BoundingBox inflate(const BoundingBox& box, double relative, double absolute) {
  const Vector pad = (relative * (box.upper - box.lower)).array() + absolute;
  return {box.lower - pad, box.upper + pad};
}

bool closed_form_path(const PolyhedralDynamic& dyn, const ConvexBody& target) {
  return target.kind() == BodyKind::kPoint || (target.kind() == BodyKind::kBox && dyn.is_axis_aligned());
}

}  // namespace

std::vector<CheckResult> check_dynamic(const PolyhedralDynamic& dyn, const CheckOptions& options) {
  const Eigen::Index n = dyn.dimension();
  const double ell = lipschitz_bound(dyn);
  std::vector<CheckResult> out;

  {
    Suite s("gauge_positive_homogeneity", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector u = s.in_cube(n, kGaugeScale);
      const double lambda = s.uniform(1e-3, 100.0);
      const double scaled = lambda * gauge(dyn, u).value;
      s.record(std::abs(gauge(dyn, lambda * u).value - scaled) - 1e-12 * (1.0 + scaled));
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_subadditivity", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector u = s.in_cube(n, kGaugeScale);
      const Vector v = s.in_cube(n, kGaugeScale);
      s.record(gauge(dyn, u + v).value - gauge(dyn, u).value - gauge(dyn, v).value - 1e-9);
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_zero_set_recession_cone", options);
    for (long c = 0; c < options.cases; ++c) {
      Vector u = s.in_cube(n, kGaugeScale);
      // Every fourth case lands on a coordinate hyperplane to probe cone faces.
      if (c % 4 == 0) u[c % n] = 0.0;
      const bool zero = gauge(dyn, u).value == 0.0;
      s.record(zero == recession_contains(dyn, u, 0.0) ? -1.0 : 1.0);
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_lipschitz", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector u = s.in_cube(n, kGaugeScale);
      const Vector v = c % 10 == 0 ? Vector::Zero(n) : s.in_cube(n, kGaugeScale);
      s.record(std::abs(gauge(dyn, u).value - gauge(dyn, v).value) - ell * (u - v).norm() - 1e-9);
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_subgradient_inequality", options);
    for (long c = 0; c < options.cases;) {
      Vector u = s.in_cube(n, kGaugeScale);
      // Force a tie between the first two faces on some cases, unless the
      // tie can only happen on the recession cone (opposite faces).
      if (c % 5 == 0 && dyn.face_count() >= 2) {
        const Vector d = dyn.scaled_normal(0) - dyn.scaled_normal(1);
        if (d.squaredNorm() > 0.0) {
          const Vector tied = u - (d.dot(u) / d.squaredNorm()) * d;
          if (gauge(dyn, tied).value > 0.0) u = tied;
        }
      }
      const GaugeEval base = gauge(dyn, u);
      if (base.value <= 0.0) continue;
      ++c;
      double worst = -std::numeric_limits<double>::infinity();
      for (const Vector& g : gauge_subgrad_generators(dyn, u)) {
        for (int p = 0; p < 100; ++p) {
          const Vector z = s.in_cube(n, kGaugeScale);
          worst = std::max(worst, base.value + g.dot(z - u) - gauge(dyn, z).value - 1e-9);
        }
      }
      s.record(worst);
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_scaling_membership", options);
    for (long c = 0; c < options.cases; ++c) {
      Vector f = s.in_cube(n, kGaugeScale);
      const double value = gauge(dyn, f).value;
      if (value > 1.0) f *= s.uniform(0.0, 1.0) / value;
      double worst = -std::numeric_limits<double>::infinity();
      for (const Halfspace& h : dyn.faces()) {
        worst = std::max(worst, h.normal.dot(f) - h.offset - 1e-12 * (1.0 + h.offset));
      }
      s.record(worst);
    }
    out.push_back(s.done());
  }
  {
    Suite s("gauge_scan_oracle", options);
    constexpr long kSteps = 10000;
    for (long c = 0; c < options.cases; ++c) {
      const Vector u = s.in_cube(n, kGaugeScale);
      const double value = gauge(dyn, u).value;
      const double t_hi = value + 1.0;
      s.record(std::abs(gauge_oracle(dyn, u, t_hi, kSteps) - value) - t_hi / kSteps);
    }
    out.push_back(s.done());
  }
  return out;
}

std::vector<CheckResult> check_target(const PolyhedralDynamic& dyn, const ConvexBody& target,
                                      const BoundingBox& region, const CheckOptions& options,
                                      const std::string& label) {
  const Eigen::Index n = dyn.dimension();
  const double ell = lipschitz_bound(dyn);
  const bool exact = closed_form_path(dyn, target);
  const double slack = exact ? 1e-6 : kIterativeTol;
  const auto T = [&](const Vector& x) { return minimal_time(dyn, target, x).value; };
  std::vector<CheckResult> out;

  {
    Suite s(label + ".min_time_convexity", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector x = s.in_box(region);
      const Vector y = s.in_box(region);
      const double lambda = s.uniform(0.0, 1.0);
      s.record(T(lambda * x + (1.0 - lambda) * y) - lambda * T(x) - (1.0 - lambda) * T(y) - slack);
    }
    out.push_back(s.done());
  }
  {
    Suite s(label + ".min_time_lipschitz", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector x = s.in_box(region);
      const Vector y = c % 2 == 0 ? s.in_box(region) : Vector(x + s.in_cube(n, 0.5));
      s.record(std::abs(T(x) - T(y)) - ell * (x - y).norm() - slack);
    }
    out.push_back(s.done());
  }
  {
    Suite s(label + ".translation_estimate", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector x = s.in_box(region);
      Vector f = s.in_cube(n, kGaugeScale);
      const double value = gauge(dyn, f).value;
      if (value > 1.0) f *= s.uniform(0.0, 1.0) / value;
      const double t = s.uniform(1e-6, 5.0);
      s.record(T(x - t * f) - T(x) - t - slack);
    }
    out.push_back(s.done());
  }
  {
    Suite s(label + ".witness_validity", options);
    for (long c = 0; c < options.cases; ++c) {
      const Vector x = s.in_box(region);
      const MinTimeResult r = minimal_time(dyn, target, x);
      const double inside = contains(target, r.witness, 1e-6) ? -1.0 : 1.0;
      const double agree = std::abs(gauge(dyn, r.witness - x).value - r.value) - slack;
      s.record(std::max(inside, agree));
    }
    out.push_back(s.done());
  }
  {
    Suite s(label + ".min_time_oracle_agreement", options);
    const double h = options.oracle_h;
    const double bound = ell * h * std::sqrt(static_cast<double>(n)) + (exact ? 1e-12 : kIterativeTol);
    for (long c = 0; c < options.oracle_cases; ++c) {
      const Vector x = s.in_box(region);
      s.record(std::abs(T(x) - minimal_time_oracle(dyn, target, x, h)) - bound);
    }
    out.push_back(s.done());
  }
  if (exact) {
    // T_Q(x) = T_{Q_r}(x) + r with Q_r = {T_Q <= r} replaced by its grid
    // points. A minimiser for Q_r lies on the segment from x to the witness,
    // so the grid only needs to cover that segment's bounding box.
    Suite s(label + ".sublevel_shift", options);
    const double h = options.sublevel_h;
    const double bound = ell * h * std::sqrt(static_cast<double>(n)) + 1e-6;
    const BoundingBox near = inflate(bounding_box(target), 0.0, 1.5);
    for (long c = 0; c < options.cases;) {
      const Vector x = s.in_box(near);
      const MinTimeResult base = minimal_time(dyn, target, x);
      if (base.value < 0.2) continue;
      ++c;
      const double r = s.uniform(0.1, 0.9) * base.value;
      const BoundingBox segment{x.cwiseMin(base.witness).array() - 2.0 * h,
                                x.cwiseMax(base.witness).array() + 2.0 * h};
      double shifted = std::numeric_limits<double>::infinity();
      for_each_grid_point(segment.lower, segment.upper, h, [&](const Vector& w) {
        const double to_w = gauge_value(dyn, w - x);
        if (to_w < shifted && T(w) <= r) shifted = to_w;
      });
      s.record(std::abs(base.value - (shifted + r)) - bound);
    }
    out.push_back(s.done());
  }
  return out;
}

std::vector<CheckResult> check_solver(const SibProblem& problem, const CheckOptions& options) {
  const Eigen::Index n = problem.dimension();
  const BoundingBox region = sampling_region(problem);
  const BoundingBox feasible_box =
      problem.constraint.is_bounded() ? bounding_box(problem.constraint) : region;
  const double ell = lipschitz_bound(problem.dynamic);

  Suite ineq("solver_subgradient_inequality", options);
  Suite norm("solver_subgradient_norm", options);
  for (long c = 0; c < options.cases;) {
    Vector x = ineq.in_box(feasible_box);
    if (!contains(problem.constraint, x, 0.0)) x = euclidean_project(problem.constraint, x);
    ++c;
    const ObjectiveEval eval = objective(problem, x);
    const Vector g = select_subgradient(problem, x, eval);
    const std::size_t i = eval.active.front();
    const ConvexBody& target = problem.targets[i];
    const double slack = closed_form_path(problem.dynamic, target) ? 1e-6 : kIterativeTol;
    const double base = eval.per_target[i].value;

    double worst = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < 50; ++p) {
      const Vector z = p % 2 == 0 ? ineq.in_box(region) : Vector(x + ineq.in_cube(n, 1.0));
      const double tz = minimal_time(problem.dynamic, target, z, problem.inner).value;
      worst = std::max(worst, base + g.dot(z - x) - tz - slack);
    }
    ineq.record(worst);
    norm.record(g.norm() - ell - 1e-9);
  }
  return {ineq.done(), norm.done()};
}

BoundingBox sampling_region(const SibProblem& problem) {
  BoundingBox box = bounding_box(problem.targets.front());
  const auto absorb = [&](const ConvexBody& body) {
    if (!body.is_bounded()) return;
    const BoundingBox b = bounding_box(body);
    box.lower = box.lower.cwiseMin(b.lower);
    box.upper = box.upper.cwiseMax(b.upper);
  };
  for (const ConvexBody& t : problem.targets) absorb(t);
  absorb(problem.constraint);
  return inflate(box, 0.1, 1.0);
}

std::vector<CheckResult> check_problem(const SibProblem& problem, const CheckOptions& options) {
  std::vector<CheckResult> out = check_dynamic(problem.dynamic, options);
  const BoundingBox region = sampling_region(problem);
  for (std::size_t i = 0; i < problem.targets.size(); ++i) {
    std::vector<CheckResult> part =
        check_target(problem.dynamic, problem.targets[i], region, options, "target" + std::to_string(i));
    out.insert(out.end(), part.begin(), part.end());
  }
  std::vector<CheckResult> solver = check_solver(problem, options);
  out.insert(out.end(), solver.begin(), solver.end());
  return out;
}

}  // namespace sib
