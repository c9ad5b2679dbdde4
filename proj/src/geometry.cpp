#include "sib/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sib {

namespace {

// A coordinate within this distance of a box face is treated as on the face.
double face_tolerance(double lower, double upper) { return 1e-9 * (1.0 + std::abs(upper - lower)); }

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_size(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

Vector project_halfspace(const Halfspace& h, const Vector& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / h.normal.squaredNorm()) * h.normal;
}

}  // namespace

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::kPoint:
      return "point";
    case BodyKind::kBox:
      return "box";
    case BodyKind::kBall:
      return "ball";
    case BodyKind::kHalfspaces:
      return "halfspaces";
  }
  return "unknown";
}

void require_finite(const Vector& x, std::string_view what) {
  if (x.size() < 1) throw ValidationError(std::string(what) + ": empty vector");
  if (!x.allFinite()) throw ValidationError(std::string(what) + ": non-finite coordinate");
}

void require_dimension(const ConvexBody& body, const Vector& x, std::string_view what) {
  if (x.size() != body.dimension()) {
    throw DimensionError(std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                         ", body has dimension " + std::to_string(body.dimension()));
  }
}

ConvexBody ConvexBody::point(Vector p) {
  require_finite(p, "point");
  return ConvexBody(Point{std::move(p)});
}

ConvexBody ConvexBody::box(Vector lower, Vector upper) {
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  require_same_size(lower, upper, "box");
  if ((lower.array() > upper.array()).any()) throw ValidationError("box: lower > upper");
  return ConvexBody(Box{std::move(lower), std::move(upper)});
}

ConvexBody ConvexBody::box_centered(const Vector& center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw ValidationError("box: radius must be finite and nonnegative");
  }
  return box(center.array() - radius, center.array() + radius);
}

ConvexBody ConvexBody::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("ball: radius must be finite and > 0");
  }
  return ConvexBody(Ball{std::move(center), radius});
}

ConvexBody ConvexBody::halfspaces(std::vector<Halfspace> faces) {
  if (faces.empty()) throw ValidationError("halfspaces: need at least one face");
  const Eigen::Index n = faces.front().normal.size();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string where = "halfspaces face " + std::to_string(i);
    require_finite(faces[i].normal, where);
    if (faces[i].normal.size() != n) throw DimensionError(where + ": inconsistent dimension");
    if (faces[i].normal.norm() == 0.0) throw ValidationError(where + ": zero normal");
    if (!std::isfinite(faces[i].offset)) throw ValidationError(where + ": non-finite offset");
  }
  return ConvexBody(HalfspaceIntersection{std::move(faces)});
}

Eigen::Index ConvexBody::dimension() const {
  return std::visit(Overloaded{
                        [](const Point& s) { return s.p.size(); },
                        [](const Box& s) { return s.lower.size(); },
                        [](const Ball& s) { return s.center.size(); },
                        [](const HalfspaceIntersection& s) { return s.faces.front().normal.size(); },
                    },
                    shape_);
}

bool contains(const ConvexBody& body, const Vector& x, double tol) {
  require_dimension(body, x, "contains");
  if (tol < 0.0) throw PreconditionError("contains: tol must be >= 0");
  return std::visit(Overloaded{
                        [&](const Point& s) { return (x - s.p).norm() <= tol; },
                        [&](const Box& s) {
                          return ((x.array() >= s.lower.array() - tol) &&
                                  (x.array() <= s.upper.array() + tol))
                              .all();
                        },
                        [&](const Ball& s) { return (x - s.center).norm() <= s.radius + tol; },
                        [&](const HalfspaceIntersection& s) {
                          for (const Halfspace& h : s.faces) {
                            if (h.normal.dot(x) > h.offset + tol * h.normal.norm()) return false;
                          }
                          return true;
                        },
                    },
                    body.shape());
}

Vector dykstra_project(const std::vector<Halfspace>& faces, const Vector& x,
                       const DykstraSettings& settings) {
  const std::size_t q = faces.size();
  Vector current = x;
  std::vector<Vector> increments(q, Vector::Zero(x.size()));
  const double stop = settings.displacement_tol * (1.0 + x.norm());

  for (int sweep = 0; sweep < settings.max_sweeps; ++sweep) {
    const Vector start = current;
    for (std::size_t i = 0; i < q; ++i) {
      const Vector shifted = current + increments[i];
      current = project_halfspace(faces[i], shifted);
      increments[i] = shifted - current;
    }
    if ((current - start).norm() < stop) break;
  }

  for (std::size_t i = 0; i < q; ++i) {
    const Halfspace& h = faces[i];
    const double violation = h.normal.dot(current) - h.offset;
    if (violation > settings.feasibility_tol * h.normal.norm() * (1.0 + current.norm())) {
      throw InfeasibleError("projection onto halfspace intersection failed: face " +
                            std::to_string(i) + " violated by " + std::to_string(violation) +
                            " (set is empty or projection did not converge)");
    }
  }
  return current;
}

Vector euclidean_project(const ConvexBody& body, const Vector& x) {
  require_dimension(body, x, "euclidean_project");
  return std::visit(Overloaded{
                        [&](const Point& s) -> Vector { return s.p; },
                        [&](const Box& s) -> Vector {
                          return x.cwiseMax(s.lower).cwiseMin(s.upper);
                        },
                        [&](const Ball& s) -> Vector {
                          const Vector offset = x - s.center;
                          const double dist = offset.norm();
                          if (dist <= s.radius) return x;
                          return s.center + (s.radius / dist) * offset;
                        },
                        [&](const HalfspaceIntersection& s) -> Vector {
                          if (contains(body, x, 0.0)) return x;
                          return dykstra_project(s.faces, x);
                        },
                    },
                    body.shape());
}

double support(const ConvexBody& body, const Vector& v) {
  require_dimension(body, v, "support");
  return std::visit(Overloaded{
                        [&](const Point& s) { return v.dot(s.p); },
                        [&](const Box& s) {
                          double total = 0.0;
                          for (Eigen::Index j = 0; j < v.size(); ++j) {
                            total += v[j] >= 0.0 ? v[j] * s.upper[j] : v[j] * s.lower[j];
                          }
                          return total;
                        },
                        [&](const Ball& s) { return v.dot(s.center) + s.radius * v.norm(); },
                        [&](const HalfspaceIntersection&) -> double {
                          throw UnsupportedError("support: halfspace intersections may be unbounded");
                        },
                    },
                    body.shape());
}

Vector support_point(const ConvexBody& body, const Vector& v) {
  require_dimension(body, v, "support_point");
  return std::visit(Overloaded{
                        [&](const Point& s) -> Vector { return s.p; },
                        [&](const Box& s) -> Vector {
                          return (v.array() >= 0.0).select(s.upper, s.lower);
                        },
                        [&](const Ball& s) -> Vector {
                          const double norm = v.norm();
                          if (norm == 0.0) return s.center;
                          return s.center + (s.radius / norm) * v;
                        },
                        [&](const HalfspaceIntersection&) -> Vector {
                          throw UnsupportedError("support_point: halfspace intersections may be unbounded");
                        },
                    },
                    body.shape());
}

bool normal_cone_contains(const ConvexBody& body, const Vector& w, const Vector& v, double tol) {
  require_dimension(body, w, "normal_cone_contains");
  require_dimension(body, v, "normal_cone_contains");
  if (!body.is_bounded()) throw UnsupportedError("normal_cone_contains: body must be bounded");
  if (!contains(body, w, tol)) throw PreconditionError("normal_cone_contains: w is not in the body");

  Vector base = w;
  if (body.kind() == BodyKind::kBox) {
    const Box& box = body.as<Box>();
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      const double ftol = face_tolerance(box.lower[j], box.upper[j]);
      if (std::abs(w[j] - box.upper[j]) <= ftol) {
        base[j] = box.upper[j];
      } else if (std::abs(w[j] - box.lower[j]) <= ftol) {
        base[j] = box.lower[j];
      }
    }
  }
  return support(body, v) - v.dot(base) <= tol * (1.0 + v.norm());
}

BoundingBox bounding_box(const ConvexBody& body) {
  return std::visit(Overloaded{
                        [](const Point& s) { return BoundingBox{s.p, s.p}; },
                        [](const Box& s) { return BoundingBox{s.lower, s.upper}; },
                        [](const Ball& s) {
                          return BoundingBox{(s.center.array() - s.radius).matrix(),
                                             (s.center.array() + s.radius).matrix()};
                        },
                        [](const HalfspaceIntersection&) -> BoundingBox {
                          throw UnsupportedError("bounding_box: halfspace intersections may be unbounded");
                        },
                    },
                    body.shape());
}

double diameter(const ConvexBody& body) {
  return std::visit(Overloaded{
                        [](const Point&) { return 0.0; },
                        [](const Box& s) { return (s.upper - s.lower).norm(); },
                        [](const Ball& s) { return 2.0 * s.radius; },
                        [](const HalfspaceIntersection&) {
                          return std::numeric_limits<double>::infinity();
                        },
                    },
                    body.shape());
}

}  // namespace sib
