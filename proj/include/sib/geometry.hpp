#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sib/error.hpp"

namespace sib {

using Vector = Eigen::VectorXd;

// Size-aware exact equality (Eigen's operator== asserts on size mismatch).
inline bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// {x : <normal, x> <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  bool operator==(const Halfspace& other) const {
    return offset == other.offset && same_vector(normal, other.normal);
  }
};

struct Point {
  Vector p;
  bool operator==(const Point& o) const { return same_vector(p, o.p); }
};

struct Box {
  Vector lower;
  Vector upper;
  bool operator==(const Box& o) const {
    return same_vector(lower, o.lower) && same_vector(upper, o.upper);
  }
};

struct Ball {
  Vector center;
  double radius = 0.0;
  bool operator==(const Ball& o) const {
    return radius == o.radius && same_vector(center, o.center);
  }
};

struct HalfspaceIntersection {
  std::vector<Halfspace> faces;
  bool operator==(const HalfspaceIntersection&) const = default;
};

enum class BodyKind { kPoint, kBox, kBall, kHalfspaces };

std::string_view to_string(BodyKind kind);

// Closed convex set used for targets and constraints. Instances are only
// created through the validating factories, so a ConvexBody always satisfies
// its invariants (finite data, lower <= upper, radius > 0, nonzero normals).
class ConvexBody {
 public:
  using Variant = std::variant<Point, Box, Ball, HalfspaceIntersection>;

  static ConvexBody point(Vector p);
  static ConvexBody box(Vector lower, Vector upper);
  // Axis-aligned cube [center - radius, center + radius]^n.
  static ConvexBody box_centered(const Vector& center, double radius);
  static ConvexBody ball(Vector center, double radius);
  static ConvexBody halfspaces(std::vector<Halfspace> faces);

  BodyKind kind() const { return static_cast<BodyKind>(shape_.index()); }
  Eigen::Index dimension() const;
  bool is_bounded() const { return kind() != BodyKind::kHalfspaces; }

  const Variant& shape() const { return shape_; }
  template <typename T>
  const T& as() const {
    return std::get<T>(shape_);
  }

  bool operator==(const ConvexBody&) const = default;

 private:
  explicit ConvexBody(Variant shape) : shape_(std::move(shape)) {}
  Variant shape_;
};

struct BoundingBox {
  Vector lower;
  Vector upper;
};

// Throws DimensionError when the sizes differ.
void require_dimension(const ConvexBody& body, const Vector& x, std::string_view what);
void require_finite(const Vector& x, std::string_view what);

// x lies in the body inflated by tol in every defining inequality.
bool contains(const ConvexBody& body, const Vector& x, double tol);

// Nearest point of the body. Point/Box/Ball use closed forms; halfspace
// intersections use Dykstra's alternating projections and throw
// InfeasibleError when the set is empty.
Vector euclidean_project(const ConvexBody& body, const Vector& x);

// sup{<v, y> : y in body}; bounded bodies only.
double support(const ConvexBody& body, const Vector& v);

// A maximiser of <v, y> over a bounded body.
Vector support_point(const ConvexBody& body, const Vector& v);

// v in N(w; body), tested through support(body, v) - <v, w> <= tol (1 + |v|).
// Requires w in the body (within tol) and a bounded body.
bool normal_cone_contains(const ConvexBody& body, const Vector& w, const Vector& v, double tol);

// Bounded bodies only.
BoundingBox bounding_box(const ConvexBody& body);
// Diameter of a bounded body; +inf for halfspace intersections.
double diameter(const ConvexBody& body);

struct DykstraSettings {
  int max_sweeps = 10000;
  double displacement_tol = 1e-12;
  double feasibility_tol = 1e-9;
};

Vector dykstra_project(const std::vector<Halfspace>& faces, const Vector& x,
                       const DykstraSettings& settings = {});

}  // namespace sib
