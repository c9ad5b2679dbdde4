#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sib/geometry.hpp"

namespace {

using sib::ConvexBody;
using sib::Vector;

Vector v2(double x, double y) { return Vector{{x, y}}; }

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(ConvexBody::ball(v2(-7, -4), 4), v2(-7, -4), 0.0));
  EXPECT_FALSE(contains(ConvexBody::box(v2(-2, -2), v2(2, 2)), v2(3, 0), 0.0));
  // The optimum of the eight-square instance sits on the disk boundary at
  // t = (-22 + sqrt(92)) / 4 on the diagonal; the 5-decimal rounding
  // (-3.10208, -3.10208) lies about 5e-6 outside.
  const ConvexBody disk = ConvexBody::ball(v2(-7, -4), 4);
  const double t = (-22.0 + std::sqrt(92.0)) / 4.0;
  EXPECT_TRUE(contains(disk, v2(t, t), 1e-9));
  EXPECT_TRUE(contains(disk, v2(-3.10208, -3.10208), 1e-5));
  EXPECT_FALSE(contains(disk, v2(-3.10208, -3.10208), 1e-9));
}

TEST(Contains, InflatesEveryInequality) {
  const ConvexBody box = ConvexBody::box(v2(0, 0), v2(1, 1));
  EXPECT_TRUE(contains(box, v2(1.05, -0.05), 0.1));
  EXPECT_FALSE(contains(box, v2(1.05, -0.05), 0.01));
  const ConvexBody half = ConvexBody::halfspaces({{v2(3, 4), 5.0}});
  // Distance 0.2 outside the face; |a| = 5 scales the slack.
  EXPECT_TRUE(contains(half, v2(0.6 + 0.12, 0.8 + 0.16), 0.2 + 1e-12));
  EXPECT_FALSE(contains(half, v2(0.6 + 0.12, 0.8 + 0.16), 0.19));
}

TEST(Contains, DimensionMismatchThrows) {
  EXPECT_THROW(contains(ConvexBody::ball(v2(0, 0), 1), Vector::Zero(3), 0.0), sib::DimensionError);
}

TEST(Factories, RejectInvalidBodies) {
  EXPECT_THROW(ConvexBody::box(v2(1, 0), v2(0, 1)), sib::ValidationError);
  EXPECT_THROW(ConvexBody::ball(v2(0, 0), 0.0), sib::ValidationError);
  EXPECT_THROW(ConvexBody::ball(v2(0, 0), -1.0), sib::ValidationError);
  EXPECT_THROW(ConvexBody::point(v2(NAN, 0)), sib::ValidationError);
  EXPECT_THROW(ConvexBody::halfspaces({}), sib::ValidationError);
  EXPECT_THROW(ConvexBody::halfspaces({{v2(0, 0), 1.0}}), sib::ValidationError);
  EXPECT_THROW(ConvexBody::halfspaces({{v2(1, 0), 1.0}, {Vector::Ones(3), 1.0}}), sib::DimensionError);
  EXPECT_NO_THROW(ConvexBody::halfspaces({{v2(1, 0), -3.0}}));
}

TEST(Project, Examples) {
  EXPECT_TRUE(euclidean_project(ConvexBody::ball(v2(0, 0), 1), v2(3, 4)).isApprox(v2(0.6, 0.8), 1e-15));
  EXPECT_EQ(euclidean_project(ConvexBody::box(v2(0, 0), v2(1, 1)), v2(-2, 0.5)), v2(0, 0.5));
  EXPECT_EQ(euclidean_project(ConvexBody::ball(v2(-7, -4), 4), v2(-7, -4)), v2(-7, -4));
}

TEST(Project, HalfspaceIntersectionCorner) {
  // Quadrant x <= 0, y <= 0: the nearest point to (1, 2) is the apex.
  const ConvexBody quadrant = ConvexBody::halfspaces({{v2(1, 0), 0.0}, {v2(0, 1), 0.0}});
  EXPECT_LT((euclidean_project(quadrant, v2(1, 2)) - v2(0, 0)).norm(), 1e-10);
  // Triangle x >= 0, y >= 0, x + y <= 1: (2, -1) projects to the vertex (1, 0).
  const ConvexBody triangle =
      ConvexBody::halfspaces({{v2(-1, 0), 0.0}, {v2(0, -1), 0.0}, {v2(1, 1), 1.0}});
  EXPECT_LT((euclidean_project(triangle, v2(2, -1)) - v2(1, 0)).norm(), 1e-9);
  // Edge interior: (1, 1) projects to (0.5, 0.5).
  EXPECT_LT((euclidean_project(triangle, v2(1, 1)) - v2(0.5, 0.5)).norm(), 1e-9);
  EXPECT_EQ(euclidean_project(triangle, v2(0.2, 0.3)), v2(0.2, 0.3));
}

TEST(Project, EmptyIntersectionThrows) {
  const ConvexBody empty = ConvexBody::halfspaces({{v2(1, 0), -1.0}, {v2(-1, 0), -1.0}});
  EXPECT_THROW(euclidean_project(empty, v2(0, 0)), sib::InfeasibleError);
}

TEST(Support, Examples) {
  EXPECT_DOUBLE_EQ(support(ConvexBody::point(v2(2, 3)), v2(1, -1)), -1.0);
  EXPECT_DOUBLE_EQ(support(ConvexBody::box(v2(-1, -1), v2(1, 1)), v2(1, 0)), 1.0);

  // Sampling the circle of radius 2 approaches sup <(3,4), y> = 10 from below.
  double sampled = -1e300;
  for (int i = 0; i < 100000; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 100000.0;
    sampled = std::max(sampled, 3.0 * 2.0 * std::cos(t) + 4.0 * 2.0 * std::sin(t));
  }
  EXPECT_NEAR(sampled, 10.0, 1e-6);
  EXPECT_DOUBLE_EQ(support(ConvexBody::ball(v2(0, 0), 2), v2(3, 4)), 10.0);
}

TEST(Support, UnboundedBodyUnsupported) {
  EXPECT_THROW(support(ConvexBody::halfspaces({{v2(1, 0), 1.0}}), v2(1, 0)), sib::UnsupportedError);
}

TEST(NormalCone, Examples) {
  const ConvexBody box = ConvexBody::box(v2(-2, -2), v2(2, 2));
  EXPECT_TRUE(normal_cone_contains(box, v2(-2, 0), v2(-1, 0), 1e-12));
  EXPECT_FALSE(normal_cone_contains(box, v2(0, 0), v2(1, 0), 1e-12));
  EXPECT_TRUE(normal_cone_contains(ConvexBody::ball(v2(0, 0), 1), v2(1, 0), v2(5, 0), 1e-12));
}

TEST(NormalCone, CornerAndFaceSnapping) {
  const ConvexBody box = ConvexBody::box(v2(-2, -2), v2(2, 2));
  EXPECT_TRUE(normal_cone_contains(box, v2(-2, 2), v2(-1, 3), 1e-12));
  EXPECT_FALSE(normal_cone_contains(box, v2(-2, 2), v2(1, 3), 1e-12));
  // A coordinate 1e-10 inside the face is still classified as on it.
  EXPECT_TRUE(normal_cone_contains(box, v2(-2 + 1e-10, 0), v2(-1, 0), 1e-12));
  EXPECT_FALSE(normal_cone_contains(box, v2(-2 + 1e-6, 0), v2(-1, 0), 1e-12));
}

TEST(NormalCone, PreconditionAndUnbounded) {
  EXPECT_THROW(normal_cone_contains(ConvexBody::ball(v2(0, 0), 1), v2(2, 0), v2(1, 0), 1e-12),
               sib::PreconditionError);
  EXPECT_THROW(normal_cone_contains(ConvexBody::halfspaces({{v2(1, 0), 1.0}}), v2(1, 0), v2(1, 0), 0.0),
               sib::UnsupportedError);
}

TEST(BoundingBoxAndDiameter, Bodies) {
  EXPECT_DOUBLE_EQ(diameter(ConvexBody::ball(v2(0, 0), 4)), 8.0);
  EXPECT_DOUBLE_EQ(diameter(ConvexBody::box(v2(0, 0), v2(3, 4))), 5.0);
  EXPECT_DOUBLE_EQ(diameter(ConvexBody::point(v2(1, 1))), 0.0);
  EXPECT_TRUE(std::isinf(diameter(ConvexBody::halfspaces({{v2(1, 0), 1.0}}))));
  const sib::BoundingBox b = bounding_box(ConvexBody::ball(v2(-7, -4), 4));
  EXPECT_EQ(b.lower, v2(-11, -8));
  EXPECT_EQ(b.upper, v2(-3, 0));
}

// Random bodies with a rejection sampler for their points.
struct Sampled {
  ConvexBody body;
  sib::BoundingBox bounds;
};

std::vector<Sampled> random_bodies(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::vector<Sampled> out;
  for (int i = 0; i < 10; ++i) {
    const Vector c = v2(u(rng), u(rng));
    const double r = pos(rng);
    out.push_back({ConvexBody::ball(c, r), {c.array() - r, c.array() + r}});
    const Vector lo = v2(u(rng), u(rng));
    const Vector hi = lo + v2(pos(rng), pos(rng));
    out.push_back({ConvexBody::box(lo, hi), {lo, hi}});
    out.push_back({ConvexBody::point(c), {c, c}});
    // Random triangle-ish polygon around c: three halfspaces with outward normals.
    std::vector<sib::Halfspace> faces;
    for (int k = 0; k < 3; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / 3.0 + 0.3 * u(rng) / 5.0;
      const Vector n = v2(std::cos(angle), std::sin(angle));
      faces.push_back({n, n.dot(c) + r});
    }
    out.push_back({ConvexBody::halfspaces(faces), {c.array() - 2.5 * r, c.array() + 2.5 * r}});
  }
  return out;
}

Vector sample_in(const Sampled& s, std::mt19937_64& rng) {
  for (;;) {
    Vector y(2);
    for (int j = 0; j < 2; ++j) {
      y[j] = std::uniform_real_distribution<double>(s.bounds.lower[j], s.bounds.upper[j])(rng);
    }
    if (contains(s.body, y, 0.0)) return y;
  }
}

TEST(GeometryProperties, ProjectionOptimalityAndCharacterization) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (const Sampled& s : random_bodies(rng)) {
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x = v2(u(rng), u(rng));
      const Vector p = euclidean_project(s.body, x);
      ASSERT_TRUE(contains(s.body, p, 1e-9));
      EXPECT_LT((euclidean_project(s.body, p) - p).norm(), 1e-9);
      for (int i = 0; i < 100; ++i) {
        const Vector y = sample_in(s, rng);
        EXPECT_LE((p - x).norm(), (y - x).norm() + 1e-9);
        EXPECT_LE((x - p).dot(y - p), 1e-9);
      }
    }
  }
}

TEST(GeometryProperties, SupportDominanceAndZeroNormal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Sampled& s : random_bodies(rng)) {
    if (!s.body.is_bounded()) continue;
    for (int trial = 0; trial < 5; ++trial) {
      const Vector v = v2(u(rng), u(rng));
      const double sigma = support(s.body, v);
      EXPECT_NEAR(v.dot(support_point(s.body, v)), sigma, 1e-12 * (1.0 + std::abs(sigma)));
      for (int i = 0; i < 100; ++i) {
        const Vector y = sample_in(s, rng);
        EXPECT_LE(v.dot(y), sigma + 1e-9);
        EXPECT_TRUE(normal_cone_contains(s.body, y, Vector::Zero(2), 1e-12));
      }
    }
  }
}

}  // namespace
