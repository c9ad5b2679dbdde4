#include "sib/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sib {

namespace {

void require_size(const PolyhedralDynamic& dyn, const Vector& u, const char* what) {
  if (u.size() != dyn.dimension()) {
    throw DimensionError(std::string(what) + ": vector has dimension " + std::to_string(u.size()) +
                         ", dynamic has dimension " + std::to_string(dyn.dimension()));
  }
}

}  // namespace

void validate(std::span<const Halfspace> faces) {
  if (faces.empty()) throw ValidationError("dynamic: need at least one face");
  const Eigen::Index n = faces.front().normal.size();
  if (n < 1) throw ValidationError("dynamic face 0: empty normal");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string where = "dynamic face " + std::to_string(i);
    if (faces[i].normal.size() != n) throw DimensionError(where + ": inconsistent dimension");
    if (!faces[i].normal.allFinite() || !std::isfinite(faces[i].offset)) {
      throw ValidationError(where + ": non-finite data");
    }
    if (faces[i].normal.norm() == 0.0) throw ValidationError(where + ": zero normal");
    if (!(faces[i].offset > 0.0)) throw ValidationError(where + ": b must be > 0");
  }
}

PolyhedralDynamic::PolyhedralDynamic(std::vector<Halfspace> faces) : faces_(std::move(faces)) {
  validate(faces_);
  scaled_.reserve(faces_.size());
  axis_aligned_ = true;
  for (const Halfspace& h : faces_) {
    scaled_.push_back(h.normal / h.offset);
    if ((h.normal.array() != 0.0).count() != 1) axis_aligned_ = false;
  }
}

double gauge_value(const PolyhedralDynamic& dyn, const Vector& u) {
  double value = 0.0;
  for (std::size_t i = 0; i < dyn.face_count(); ++i) {
    value = std::max(value, dyn.scaled_normal(i).dot(u));
  }
  return value;
}

GaugeEval gauge(const PolyhedralDynamic& dyn, const Vector& u, double active_tol) {
  require_size(dyn, u, "gauge");
  GaugeEval out;
  std::vector<double> ratios(dyn.face_count());
  for (std::size_t i = 0; i < dyn.face_count(); ++i) {
    ratios[i] = dyn.scaled_normal(i).dot(u);
    out.value = std::max(out.value, ratios[i]);
  }
  const double cutoff = out.value - active_tol * (1.0 + out.value);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i] >= cutoff) out.active.push_back(i);
  }
  out.generator_count = out.active.size();
  return out;
}

bool recession_contains(const PolyhedralDynamic& dyn, const Vector& d, double tol) {
  require_size(dyn, d, "recession_contains");
  return std::all_of(dyn.faces().begin(), dyn.faces().end(), [&](const Halfspace& h) {
    return h.normal.dot(d) <= tol * h.normal.norm();
  });
}

std::vector<Vector> gauge_subgrad_generators(const PolyhedralDynamic& dyn, const Vector& u,
                                             double active_tol) {
  const GaugeEval eval = gauge(dyn, u, active_tol);
  if (!(eval.value > 0.0)) {
    throw PreconditionError("gauge_subgrad_generators: u lies in the recession cone (gauge = 0)");
  }
  std::vector<Vector> generators;
  generators.reserve(eval.active.size());
  for (std::size_t i : eval.active) generators.push_back(dyn.scaled_normal(i));
  return generators;
}

double lipschitz_bound(const PolyhedralDynamic& dyn) {
  double bound = 0.0;
  for (std::size_t i = 0; i < dyn.face_count(); ++i) {
    bound = std::max(bound, dyn.scaled_normal(i).norm());
  }
  return bound;
}

}  // namespace sib
