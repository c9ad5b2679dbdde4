#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sib/geometry.hpp"

namespace sib {

// Relative tolerance used to decide which faces attain the gauge maximum.
inline constexpr double kGaugeActiveTol = 1e-9;

// Result of evaluating the Minkowski gauge of a polyhedral dynamic.
struct GaugeEval {
  double value = 0.0;
  // Faces i (0-based) whose ratio <a_i, u> / b_i attains `value` within the
  // active tolerance. May be empty when value == 0.
  std::vector<std::size_t> active;
  std::size_t generator_count = 0;
};

// Throws ValidationError naming the first offending face: nonpositive offset,
// zero or non-finite normal, or inconsistent dimensions.
void validate(std::span<const Halfspace> faces);

/// The dynamic F = {x : <a_i, x> <= b_i, i = 0..q-1} with every b_i > 0, so
/// the origin is an interior point. F may be unbounded; its gauge is finite
/// everywhere and its recession cone is {d : <a_i, d> <= 0}.
class PolyhedralDynamic {
 public:
  explicit PolyhedralDynamic(std::vector<Halfspace> faces);

  const std::vector<Halfspace>& faces() const { return faces_; }
  std::size_t face_count() const { return faces_.size(); }
  Eigen::Index dimension() const { return faces_.front().normal.size(); }

  // a_i / b_i, the extreme points of the gauge subdifferentials.
  const Vector& scaled_normal(std::size_t i) const { return scaled_[i]; }

  // Every face normal has exactly one nonzero coordinate.
  bool is_axis_aligned() const { return axis_aligned_; }

  bool operator==(const PolyhedralDynamic& other) const { return faces_ == other.faces_; }

 private:
  std::vector<Halfspace> faces_;
  std::vector<Vector> scaled_;
  bool axis_aligned_ = false;
};

// rho_F(u) = max(0, max_i <a_i, u> / b_i) together with its active faces.
GaugeEval gauge(const PolyhedralDynamic& dyn, const Vector& u, double active_tol = kGaugeActiveTol);

// Value-only fast path used in inner loops.
double gauge_value(const PolyhedralDynamic& dyn, const Vector& u);

// d in F-infinity within tol: <a_i, d> <= tol |a_i| for every face.
bool recession_contains(const PolyhedralDynamic& dyn, const Vector& d, double tol);

/// Extreme points {a_i / b_i : i active} of the gauge subdifferential at u.
/// The full subdifferential is their convex hull. Requires gauge(u) > 0;
/// on F-infinity the formula does not apply and PreconditionError is thrown.
std::vector<Vector> gauge_subgrad_generators(const PolyhedralDynamic& dyn, const Vector& u,
                                             double active_tol = kGaugeActiveTol);

// max_i |a_i| / b_i: the inverse radius of the largest origin-centred ball in F.
double lipschitz_bound(const PolyhedralDynamic& dyn);

}  // namespace sib
