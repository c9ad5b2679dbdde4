#include "sib/minimal_time.hpp"

#include <optional>

namespace sib {

namespace {

// Halfspaces describing x + F-infinity.
std::vector<Halfspace> shifted_recession_cone(const PolyhedralDynamic& dyn, const Vector& x) {
  std::vector<Halfspace> faces;
  faces.reserve(dyn.face_count());
  for (const Halfspace& h : dyn.faces()) faces.push_back({h.normal, h.normal.dot(x)});
  return faces;
}

// A point of target within (x + F-infinity), when the two sets meet.
std::optional<Vector> zero_level_witness(const PolyhedralDynamic& dyn, const ConvexBody& target,
                                         const Vector& x) {
  std::vector<Halfspace> faces = shifted_recession_cone(dyn, x);
  if (target.kind() == BodyKind::kBall) {
    const Ball& ball = target.as<Ball>();
    const Vector nearest = dykstra_project(faces, ball.center);
    const double gap = (nearest - ball.center).norm();
    if (gap > ball.radius + 1e-12 * (1.0 + ball.center.norm())) return std::nullopt;
    return euclidean_project(target, nearest);
  }
  if (target.kind() == BodyKind::kBox) {
    const Box& box = target.as<Box>();
    const Eigen::Index n = box.lower.size();
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector e = Vector::Zero(n);
      e[j] = 1.0;
      faces.push_back({e, box.upper[j]});
      faces.push_back({-e, -box.lower[j]});
    }
    try {
      const Vector centre = 0.5 * (box.lower + box.upper);
      return euclidean_project(target, dykstra_project(faces, centre));
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

MinTimeResult iterative_minimal_time(const PolyhedralDynamic& dyn, const ConvexBody& target,
                                     const Vector& x, const InnerConfig& cfg) {
  if (contains(target, x, 0.0)) return {0.0, x, true};

  if (std::optional<Vector> w = zero_level_witness(dyn, target, x)) {
    return {gauge_value(dyn, *w - x), *w, false};
  }

  const double c = cfg.step_scale > 0.0 ? cfg.step_scale : diameter(target);
  Vector current = euclidean_project(target, x);
  MinTimeResult best{gauge_value(dyn, current - x), current, false};

  for (int k = 1; k <= cfg.max_inner && best.value > 0.0; ++k) {
    const GaugeEval eval = gauge(dyn, current - x);
    if (eval.value <= 0.0) {
      best = {0.0, current, false};
      break;
    }
    const Vector& g = dyn.scaled_normal(eval.active.front());
    current = euclidean_project(target, current - (c / k) * g);
    const double value = gauge_value(dyn, current - x);
    if (value < best.value) best = {value, current, false};
  }
  return best;
}

}  // namespace

double default_zero_tol(const Vector& x) { return 1e-9 * (1.0 + x.norm()); }

MinTimeResult minimal_time(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x,
                           const InnerConfig& cfg) {
  if (!target.is_bounded()) {
    throw UnsupportedError("minimal_time: target must be bounded (point, box or ball)");
  }
  require_dimension(target, x, "minimal_time");
  if (x.size() != dyn.dimension()) throw DimensionError("minimal_time: dynamic dimension mismatch");

  switch (target.kind()) {
    case BodyKind::kPoint: {
      const Vector& p = target.as<Point>().p;
      return {gauge_value(dyn, p - x), p, true};
    }
    case BodyKind::kBox:
      if (dyn.is_axis_aligned()) {
        Vector w = euclidean_project(target, x);
        const double value = gauge_value(dyn, w - x);
        return {value, std::move(w), true};
      }
      break;
    default:
      break;
  }
  return iterative_minimal_time(dyn, target, x, cfg);
}

bool is_zero_level(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x, double tol,
                   const InnerConfig& cfg) {
  return minimal_time(dyn, target, x, cfg).value <= tol;
}

bool reaches_within(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x, double r,
                    double tol, const InnerConfig& cfg) {
  if (!(r >= 0.0)) throw PreconditionError("reaches_within: r must be >= 0");
  return minimal_time(dyn, target, x, cfg).value <= r + tol;
}

}  // namespace sib
