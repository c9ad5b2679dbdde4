#include "sib/oracle.hpp"

#include <limits>

namespace sib {

OracleResult grid_minimize(const SibProblem& problem, double h) {
  if (!(h > 0.0)) throw PreconditionError("grid_minimize: h must be > 0");
  if (!problem.constraint.is_bounded()) {
    throw UnsupportedError("grid_minimize: constraint must be bounded");
  }
  const BoundingBox bounds = bounding_box(problem.constraint);

  OracleResult result;
  result.resolution = h;
  result.value = std::numeric_limits<double>::infinity();
  for_each_grid_point(bounds.lower, bounds.upper, h, [&](const Vector& x) {
    if (!contains(problem.constraint, x, 0.0)) return;
    ++result.points_evaluated;
    const double value = objective(problem, x).value;
    if (value < result.value) {
      result.value = value;
      result.argmin = x;
    }
  });
  if (result.points_evaluated == 0) throw Error("grid_minimize: no grid point lies in the constraint");
  return result;
}

double minimal_time_oracle(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x,
                           double h) {
  if (!(h > 0.0)) throw PreconditionError("minimal_time_oracle: h must be > 0");
  if (!target.is_bounded()) throw UnsupportedError("minimal_time_oracle: target must be bounded");
  require_dimension(target, x, "minimal_time_oracle");
  const BoundingBox bounds = bounding_box(target);

  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for_each_grid_point(bounds.lower, bounds.upper, h, [&](const Vector& w) {
    if (!contains(target, w, 0.5 * h)) return;
    any = true;
    best = std::min(best, gauge_value(dyn, w - x));
  });
  if (!any) throw Error("minimal_time_oracle: empty target grid");
  return best;
}

double gauge_oracle(const PolyhedralDynamic& dyn, const Vector& u, double t_hi, long steps) {
  if (steps < 10) throw PreconditionError("gauge_oracle: steps must be >= 10");
  if (!(t_hi >= 0.0)) throw PreconditionError("gauge_oracle: t_hi must be >= 0");
  if (u.size() != dyn.dimension()) throw DimensionError("gauge_oracle: dimension mismatch");

  for (long j = 0; j <= steps; ++j) {
    const double t = t_hi * static_cast<double>(j) / static_cast<double>(steps);
    bool inside = true;
    for (const Halfspace& face : dyn.faces()) {
      if (face.normal.dot(u) > t * face.offset) {
        inside = false;
        break;
      }
    }
    if (inside) return t;
  }
  throw Error("gauge_oracle: u is not in t_hi F; raise t_hi");
}

}  // namespace sib
