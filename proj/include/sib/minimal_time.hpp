#pragma once

#include "sib/dynamics.hpp"
#include "sib/geometry.hpp"

namespace sib {

// Budget for the iterative minimal-time path (targets without a closed form).
struct InnerConfig {
  int max_inner = 2000;
  // Step scale c in c / k; 0 selects the target diameter.
  double step_scale = 0.0;
};

struct MinTimeResult {
  double value = 0.0;
  // A point of the target attaining (or approximating) the infimum.
  Vector witness;
  // True for closed-form evaluations; false when the inner solver ran.
  bool exact = false;
};

/// Minimal time T(x) = inf{ rho_F(w - x) : w in target } for a bounded target.
///
/// Point targets and boxes under axis-aligned dynamics use closed forms (the
/// box witness is the componentwise clamp of x). Anything else first checks
/// the zero level set, target meets x + F-infinity, by projection, and then
/// runs a projected subgradient method on w -> rho_F(w - x) with steps c / k
/// from the projection of x, keeping the best iterate.
///
/// Throws UnsupportedError for unbounded targets.
MinTimeResult minimal_time(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x,
                           const InnerConfig& cfg = {});

// Default zero-level threshold 1e-9 (1 + |x|).
double default_zero_tol(const Vector& x);

// T(x) <= tol, i.e. x in target - F-infinity.
bool is_zero_level(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x, double tol,
                   const InnerConfig& cfg = {});

// T(x) <= r + tol, i.e. (x + rF) meets the target.
bool reaches_within(const PolyhedralDynamic& dyn, const ConvexBody& target, const Vector& x, double r,
                    double tol, const InnerConfig& cfg = {});

}  // namespace sib
