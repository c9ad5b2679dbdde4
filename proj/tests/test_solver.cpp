#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sib/oracle.hpp"
#include "sib/scenario.hpp"
#include "sib/solver.hpp"

namespace {

using sib::ConvexBody;
using sib::PolyhedralDynamic;
using sib::SibProblem;
using sib::Vector;

Vector v2(double x, double y) { return Vector{{x, y}}; }

PolyhedralDynamic quadrant() { return PolyhedralDynamic({{v2(1, 0), 1.0}, {v2(0, 1), 1.0}}); }

sib::Scenario figure1() { return sib::load_scenario(SIB_SCENARIO_DIR "/figure1.json"); }

// Optimum of the eight-square instance: the diagonal point on the disk boundary.
const double kOptT = (-22.0 + std::sqrt(92.0)) / 4.0;

TEST(Objective, Examples) {
  const SibProblem problem = figure1().problem;
  EXPECT_NEAR(objective(problem, v2(-7, -4)).value, 13.0, 1e-12);
  EXPECT_NEAR(objective(problem, v2(-3.10208, -3.10208)).value, 9.10208, 1e-12);
  EXPECT_NEAR(objective(problem, v2(kOptT, kOptT)).value, 6.0 - kOptT, 1e-12);

  const SibProblem single(quadrant(), {ConvexBody::point(v2(0, 0))}, ConvexBody::ball(v2(0, 0), 1.0));
  const sib::ObjectiveEval e = objective(single, v2(0, 0));
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.active, (std::vector<std::size_t>{0}));
}

TEST(SelectSubgradient, BoxRules) {
  const ConvexBody disk = ConvexBody::ball(v2(-7, -4), 4.0);
  const Vector x = v2(-7, -4);
  // Square (-30, 0): w - x = (-21, 2) after clamping, so the second face is active.
  const SibProblem left(quadrant(), {ConvexBody::box_centered(v2(-30, 0), 2.0)}, disk);
  EXPECT_EQ(select_subgradient(left, x, objective(left, x)), v2(0, -1));
  // Square (0, -30): w - x = (5, -22), first face active.
  const SibProblem low(quadrant(), {ConvexBody::box_centered(v2(0, -30), 2.0)}, disk);
  EXPECT_EQ(select_subgradient(low, x, objective(low, x)), v2(-1, 0));
  // x in target - F-infinity.
  const SibProblem behind(quadrant(), {ConvexBody::box_centered(v2(-9, -7), 2.0)}, disk);
  EXPECT_EQ(select_subgradient(behind, x, objective(behind, x)), v2(0, 0));
}

TEST(SelectSubgradient, UsesSmallestActiveTarget) {
  const SibProblem problem = figure1().problem;
  const Vector x = v2(-7, -4);
  const sib::ObjectiveEval e = objective(problem, x);
  ASSERT_FALSE(e.active.empty());
  const std::size_t i = e.active.front();
  const SibProblem alone(problem.dynamic, {problem.targets[i]}, problem.constraint);
  EXPECT_EQ(select_subgradient(problem, x, e), select_subgradient(alone, x, objective(alone, x)));
}

TEST(Step, Examples) {
  sib::SolverConfig config;
  const SibProblem disk(quadrant(), {ConvexBody::point(v2(0, 0))}, ConvexBody::ball(v2(-7, -4), 4.0));
  EXPECT_EQ(step(disk, config, 1, v2(-7, -4), v2(0, 0)), v2(-7, -4));
  EXPECT_EQ(step(disk, config, 1, v2(-7, -4), v2(-1, 0)), v2(-6, -4));
  const SibProblem unit(quadrant(), {ConvexBody::point(v2(0, 0))}, ConvexBody::ball(v2(0, 0), 1.0));
  EXPECT_TRUE(step(unit, config, 1, v2(1, 0), v2(-2, 0)).isApprox(v2(1, 0), 1e-15));
}

TEST(StepSchedule, Alpha) {
  EXPECT_DOUBLE_EQ((sib::StepSchedule{sib::StepKind::kOneOverK, 5.0, 3}).alpha(4), 0.25);
  EXPECT_DOUBLE_EQ((sib::StepSchedule{sib::StepKind::kCOverKPlusK0, 2.0, 3}).alpha(5), 0.25);
}

TEST(Solve, TenIterationsFromCentre) {
  sib::Scenario s = figure1();
  s.solver.max_iters = 10;
  s.solver.trace_every = 1;
  const sib::SolveReport r = solve(s.problem, s.solver);
  ASSERT_EQ(r.trace.size(), 10u);
  EXPECT_EQ(r.trace.front().x, v2(-7, -4));
  EXPECT_NEAR(r.trace.front().value, 13.0, 1e-12);
  EXPECT_NEAR(r.trace.back().x[0], -4.17103, 1e-5);
  EXPECT_NEAR(r.trace.back().x[1], -4.00000, 1e-5);
  EXPECT_EQ(r.iterations_run, 10);
}

TEST(Solve, PointTargetAtStart) {
  sib::SolverConfig config;
  config.x0 = v2(1, 1);
  config.max_iters = 5;
  const SibProblem p(quadrant(), {ConvexBody::point(v2(1, 1))}, ConvexBody::box_centered(v2(0, 0), 3.0));
  const sib::SolveReport r = solve(p, config);
  EXPECT_EQ(r.v_best, 0.0);
  EXPECT_EQ(r.trace.front().best, 0.0);
  EXPECT_EQ(r.x_best, v2(1, 1));
}

TEST(Solve, Invariants) {
  sib::Scenario s = figure1();
  s.solver.max_iters = 3000;
  s.solver.trace_every = 1;
  const sib::SolveReport r = solve(s.problem, s.solver);
  ASSERT_EQ(r.trace.size(), 3000u);
  double previous = r.trace.front().best;
  for (const sib::TraceRow& row : r.trace) {
    EXPECT_LE(row.best, previous);
    EXPECT_LE(row.best, row.value);
    EXPECT_TRUE(contains(s.problem.constraint, row.x, 1e-9));
    previous = row.best;
  }
  EXPECT_EQ(r.v_best, r.trace.back().best);
  EXPECT_TRUE(r.nondegenerate);

  const sib::SolveReport again = solve(s.problem, s.solver);
  EXPECT_EQ(again.x_best, r.x_best);
  EXPECT_EQ(again.v_best, r.v_best);
}

TEST(Solve, Preconditions) {
  sib::Scenario s = figure1();
  s.solver.x0 = v2(10, 10);
  EXPECT_THROW(solve(s.problem, s.solver), sib::PreconditionError);
  s.solver.x0 = Vector::Zero(3);
  EXPECT_THROW(solve(s.problem, s.solver), sib::DimensionError);
}

TEST(Solve, DegenerateInstanceWarns) {
  // Every constraint point already lies in target - F-infinity.
  sib::SolverConfig config;
  config.x0 = v2(10, 10);
  config.max_iters = 5;
  const SibProblem p(quadrant(), {ConvexBody::box_centered(v2(0, 0), 2.0)}, ConvexBody::ball(v2(10, 10), 1.0));
  const sib::SolveReport r = solve(p, config);
  EXPECT_FALSE(r.nondegenerate);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.v_best, 0.0);
}

TEST(Solve, BallTargetsAgreeWithGrid) {
  const sib::Scenario s = sib::load_scenario(SIB_SCENARIO_DIR "/slab_balls.json");
  const sib::SolveReport r = solve(s.problem, s.solver);
  const sib::OracleResult grid = grid_minimize(s.problem, s.oracle.grid);
  const double slack = lipschitz_bound(s.problem.dynamic) * s.oracle.grid * std::sqrt(2.0);
  EXPECT_LE(r.v_best, grid.value + 1e-3);
  EXPECT_GE(r.v_best, grid.value - slack - 1e-3);
}

// Partial sums in long double, independent of the library's accumulation.
double reference_bound(long k, double D, double L) {
  long double s1 = 0.0L;
  long double s2 = 0.0L;
  for (long i = k; i >= 1; --i) {
    s1 += 1.0L / i;
    s2 += 1.0L / (static_cast<long double>(i) * i);
  }
  return static_cast<double>((D * D + L * L * s2) / (2.0L * s1));
}

TEST(ErrorBound, Examples) {
  const sib::StepSchedule harmonic;
  EXPECT_DOUBLE_EQ(sib::error_bound(harmonic, 1, 8.0, 1.0), 32.5);
  EXPECT_DOUBLE_EQ(sib::error_bound(harmonic, 1, 0.0, 1.0), 0.5);
  EXPECT_NEAR(sib::error_bound(harmonic, 100000, 8.0, 1.0), reference_bound(100000, 8.0, 1.0), 1e-12);
  EXPECT_NEAR(sib::error_bound(harmonic, 100000, 8.0, 1.0), 2.7148, 1e-4);
  EXPECT_THROW(sib::error_bound(harmonic, 0, 8.0, 1.0), sib::PreconditionError);
}

TEST(ErrorBound, DecreasesForHarmonicSteps) {
  const sib::StepSchedule harmonic;
  double previous = sib::error_bound(harmonic, 10, 8.0, 1.0);
  for (long k : {100L, 1000L, 10000L}) {
    const double b = sib::error_bound(harmonic, k, 8.0, 1.0);
    EXPECT_LT(b, previous);
    previous = b;
  }
}

TEST(Certify, Examples) {
  const SibProblem problem = figure1().problem;
  // The rounded optimum sits about 5e-6 outside the disk.
  EXPECT_TRUE(certify(problem, v2(-3.10208, -3.10208), 9.10218, 1e-5));
  EXPECT_FALSE(certify(problem, v2(-3.10208, -3.10208), 9.0, 1e-5));
  EXPECT_TRUE(certify(problem, v2(kOptT, kOptT), 6.0 - kOptT + 1e-9, 1e-9));
  EXPECT_FALSE(certify(problem, v2(10, 10), 100.0, 1e-9));
}

TEST(Nondegeneracy, Figure1) { EXPECT_TRUE(check_nondegenerate(figure1().problem)); }

}  // namespace
