#pragma once

#include <cstddef>

#include "sib/dynamics.hpp"
#include "sib/geometry.hpp"
#include "sib/solver.hpp"

namespace sib {

// Brute-force references. None of these share a code path with the solver's
// closed forms beyond the gauge formula itself.

struct OracleResult {
  double value = 0.0;
  Vector argmin;
  double resolution = 0.0;
  std::size_t points_evaluated = 0;
};

/// Minimum of the SIB objective over the grid of spacing h anchored at the
/// lower corner of the constraint's bounding box, restricted to grid points
/// inside the constraint. Ties go to the lexicographically smallest point.
/// The value is within L h sqrt(n) of the true optimum.
OracleResult grid_minimize(const SibProblem& problem, double h);

// min of rho_F(w - x) over grid points w (spacing h) within h/2 of the target.
double minimal_time_oracle(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x,
                           double h);

// Smallest t in {0, t_hi/steps, ..., t_hi} with u in tF.
double gauge_oracle(const PolyhedralDynamic& dyn, const Vector& u, double t_hi, long steps);

// Calls visit(point) for every grid point of spacing h covering [lower, upper]
// (upper faces included up to h/2 slack), in lexicographic order with the
// first coordinate varying slowest.
template <typename Visit>
void for_each_grid_point(const Vector& lower, const Vector& upper, double h, Visit&& visit);

}  // namespace sib

#include "sib/oracle_grid.ipp"
