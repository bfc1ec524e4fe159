#include <gtest/gtest.h>

#include <random>

#include "momentumlab/convex.hpp"

using namespace momentumlab;
using namespace momentumlab::convex;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::vector<Vec> gaussian_points(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v(k) = g(rng);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(ExtendedReal, InfinityAbsorbsAddition) {
  const auto inf = ExtendedReal::infinity();
  EXPECT_TRUE((inf + ExtendedReal(3.0)).is_infinite());
  EXPECT_EQ((ExtendedReal(1.0) + ExtendedReal(2.0)).value(), 3.0);
  EXPECT_TRUE(ExtendedReal(5.0) < inf);
  EXPECT_THROW((void)inf.value(), InputError);
}

TEST(ConvexSetV, NormalisesRaysAndRejectsZeroRays) {
  const ConvexSetV X({v2(0, 0)}, {v2(0, 3)});
  EXPECT_NEAR(X.rays()[0].norm(), 1.0, 1e-15);
  EXPECT_THROW(ConvexSetV({v2(0, 0)}, {v2(0, 0)}), InputError);
  EXPECT_THROW(ConvexSetV({}), InputError);
  EXPECT_THROW(ConvexSetV({v2(0, 0), v3(0, 0, 0)}), InputError);
}

TEST(ConvexSetV, DeduplicatesNearbyPoints) {
  const ConvexSetV X({v2(1, 1), v2(1, 1 + 1e-14), v2(2, 0)});
  EXPECT_EQ(X.points().size(), 2u);
}

TEST(SupportFunction, OriginIsZero) {
  EXPECT_EQ(support_function(ConvexSetV({v2(0, 0)}), v2(1, 0)).value(), 0.0);
}

TEST(SupportFunction, SegmentPairing) {
  const ConvexSetV X({v2(1, 0), v2(0, 1)});
  EXPECT_NEAR(support_function(X, v2(1, 1)).value(), -1.0, 1e-15);
}

TEST(SupportFunction, InfiniteOffTheDomain) {
  const ConvexSetV X({v2(0, 0)}, {v2(0, 1)});
  EXPECT_TRUE(support_function(X, v2(1, -1)).is_infinite());
  EXPECT_EQ(support_function(X, v2(1, 0)).value(), 0.0);
}

TEST(SupportFunction, DimensionMismatchIsInputError) {
  EXPECT_THROW(support_function(ConvexSetV({v2(0, 0)}), v3(1, 0, 0)), InputError);
  EXPECT_THROW(domain_membership(ConvexSetV({v2(0, 0)}), v3(1, 0, 0)), InputError);
}

TEST(SupportFunction, PositiveHomogeneityAndSubadditivity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(0.01, 50.0);
  for (int t = 0; t < 50; ++t) {
    const ConvexSetV X(gaussian_points(8, 3, rng));
    const auto vw = gaussian_points(2, 3, rng);
    const double l = lam(rng);
    const double s = support_function(X, vw[0]).value();
    EXPECT_NEAR(support_function(X, l * vw[0]).value(), l * s, 1e-12 * std::max(1.0, std::abs(l * s)));
    EXPECT_LE(support_function(X, vw[0] + vw[1]).value(),
              s + support_function(X, vw[1]).value() + 1e-9);
  }
}

TEST(SupportFunction, HullInsensitivity) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    auto pts = gaussian_points(6, 3, rng);
    const ConvexSetV X(pts, {v3(0, 0, 1)});
    Vec combo = Vec::Zero(3);
    double total = 0.0;
    for (const auto& p : pts) {
      const double w = u(rng);
      combo += w * p;
      total += w;
    }
    pts.push_back(combo / total + 2.0 * v3(0, 0, 1));
    const ConvexSetV Y(pts, {v3(0, 0, 1), v3(0, 0, 2)});
    for (const auto& v : gaussian_points(10, 3, rng)) {
      const auto a = support_function(X, v);
      const auto b = support_function(Y, v);
      ASSERT_EQ(a.is_infinite(), b.is_infinite());
      if (a.is_finite()) EXPECT_NEAR(a.value(), b.value(), 1e-12);
    }
  }
}

TEST(DomainMembership, Examples) {
  EXPECT_TRUE(domain_membership(ConvexSetV({v2(3, 1)}), v2(-5, 7)));
  const ConvexSetV X({v2(0, 0)}, {v2(0, 1)});
  EXPECT_FALSE(domain_membership(X, v2(1, -1)));
  EXPECT_TRUE(domain_membership(X, v2(1, 0)));
  EXPECT_FALSE(domain_interior(X, v2(1, 0)));
  EXPECT_TRUE(domain_interior(X, v2(0, 1)));
}

TEST(DomainMembership, IsConvexCone) {
  std::mt19937_64 rng(13);
  const ConvexSetV X({v3(0, 0, 0)}, {v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1)});
  int accepted = 0;
  for (int t = 0; t < 200; ++t) {
    const auto vw = gaussian_points(2, 3, rng);
    if (domain_membership(X, vw[0]) && domain_membership(X, vw[1])) {
      ++accepted;
      EXPECT_TRUE(domain_membership(X, vw[0] + vw[1]));
      EXPECT_TRUE(domain_membership(X, 3.5 * vw[0]));
    }
  }
  EXPECT_GT(accepted, 5);
}

TEST(SemiEquicontinuity, BoundedSetsAreSemiEquicontinuous) {
  const auto c = semi_equicontinuity_certificate(ConvexSetV({v2(1, 2)}));
  EXPECT_TRUE(c.verdict);
  ASSERT_TRUE(c.interior_point.has_value());
}

TEST(SemiEquicontinuity, LineInRecessionConeFails) {
  const auto c = semi_equicontinuity_certificate(ConvexSetV({v2(0, 0)}, {v2(1, 0), v2(-1, 0)}));
  EXPECT_FALSE(c.verdict);
  ASSERT_TRUE(c.line_direction.has_value());
  EXPECT_NEAR(std::abs((*c.line_direction)(0)), 1.0, 1e-12);
  EXPECT_NEAR((*c.line_direction)(1), 0.0, 1e-12);
  EXPECT_GT((*c.line_direction)(0), 0.0);
}

TEST(SemiEquicontinuity, PointedConeHasStrictInteriorDirection) {
  const ConvexSetV X({v2(0, 0)}, {v2(1, 0), v2(1, 1)});
  const auto c = semi_equicontinuity_certificate(X);
  ASSERT_TRUE(c.verdict);
  const Vec& v = *c.interior_point;
  for (const auto& r : X.rays()) EXPECT_GT(r.dot(v), 0.0);
  EXPECT_GE(c.margin, Tolerances{}.cone);
  EXPECT_TRUE(domain_interior(X, v));
}

TEST(DualCone, PositiveOrthantIsSelfDual) {
  const auto D = dual_cone({v2(1, 0), v2(0, 1)});
  ASSERT_EQ(D.points().size(), 1u);
  EXPECT_EQ(D.rays().size(), 2u);
  for (const auto& r : D.rays()) EXPECT_GE(r.minCoeff(), -1e-12);
  EXPECT_TRUE(contains(D, v2(1, 0)));
  EXPECT_TRUE(contains(D, v2(0, 1)));
  EXPECT_FALSE(contains(D, v2(-0.1, 1)));
}

TEST(DualCone, HalfPlaneGivesSingleRay) {
  const auto D = dual_cone({v2(1, 0), v2(0, 1), v2(-1, 0)});
  ASSERT_EQ(D.rays().size(), 1u);
  EXPECT_NEAR(D.rays()[0](0), 0.0, 1e-12);
  EXPECT_NEAR(D.rays()[0](1), 1.0, 1e-12);
}

TEST(DualCone, SingleRayGivesHalfPlane) {
  const auto D = dual_cone({v2(1, 0)});
  // W* = { a : a_1 >= 0 } contains (0, +-1) and (1, 0) and nothing with a_1 < 0.
  EXPECT_TRUE(contains(D, v2(0, 5)));
  EXPECT_TRUE(contains(D, v2(0, -5)));
  EXPECT_TRUE(contains(D, v2(1, 0)));
  EXPECT_FALSE(contains(D, v2(-1, 0)));
  for (const auto& r : D.rays()) EXPECT_GE(r(0), -1e-12);
}

TEST(DualCone, PairsNonnegativelyWithTheCone) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 10; ++t) {
    auto W = gaussian_points(5, 3, rng);
    for (auto& w : W) w(2) = std::abs(w(2)) + 0.5;
    const auto D = dual_cone(W);
    for (const auto& a : D.rays()) {
      for (const auto& w : W) EXPECT_GE(a.dot(w), -1e-10);
    }
    // Support of W* vanishes on W.
    Vec w = Vec::Zero(3);
    for (const auto& r : W) w += r;
    EXPECT_NEAR(support_function(D, w).value(), 0.0, 1e-12);
  }
}

TEST(DualCone, CapabilityLimits) {
  EXPECT_THROW(dual_cone({Vec::Ones(17)}), CapabilityError);
  EXPECT_THROW(dual_cone({}), InputError);
}

TEST(HullDistance, CertificateIsValid) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 30; ++t) {
    const ConvexSetV X(gaussian_points(7, 3, rng), {v3(0, 0, 1)});
    const Vec alpha = 2.0 * gaussian_points(1, 3, rng)[0];
    const auto hd = hull_distance(X, alpha);
    EXPECT_NEAR((hd.nearest - alpha).lpNorm<1>(), hd.distance, 1e-9);
    EXPECT_LE(hd.separator.lpNorm<Eigen::Infinity>(), 1.0 + 1e-9);
    for (const auto& r : X.rays()) EXPECT_GE(r.dot(hd.separator), -1e-9);
    EXPECT_GE(X.min_point_pairing(hd.separator), hd.offset - 1e-9);
    EXPECT_NEAR(hd.offset, alpha.dot(hd.separator) + hd.distance, 1e-9);
  }
}

TEST(Membership, SegmentExamples) {
  const ConvexSetV X({v2(0, 0), v2(1, 0)});
  const SupportOracle s = [&](const Vec& v) { return support_function(X, v); };
  const auto out = membership_reconstruct(v2(2, 0), s, {v2(-1, 0)});
  EXPECT_EQ(out.kind, MembershipVerdict::Kind::outside);
  ASSERT_TRUE(out.separator.has_value());
  EXPECT_EQ(*out.separator, v2(-1, 0));
  EXPECT_NEAR(out.violation, 1.0, 1e-12);
  const auto in = membership_reconstruct(v2(0.5, 0), s, {v2(-1, 0), v2(1, 0)}, &X);
  EXPECT_EQ(in.kind, MembershipVerdict::Kind::inside);
  const auto und = membership_reconstruct(v2(0.5, 0), s, {v2(-1, 0)});
  EXPECT_EQ(und.kind, MembershipVerdict::Kind::undetermined);
  EXPECT_THROW(membership_reconstruct(v2(0.5, 0), s, {}), InputError);
}

TEST(Membership, DirectionsOutsideInteriorAreRejectedForExplicitSets) {
  const ConvexSetV X({v2(0, 0)}, {v2(0, 1)});
  const SupportOracle s = [&](const Vec& v) { return support_function(X, v); };
  EXPECT_THROW(membership_reconstruct(v2(0, 1), s, {v2(1, 0)}, &X), PreconditionError);
}

TEST(Membership, PerturbedVertexIsOutside) {
  std::mt19937_64 rng(16);
  const Tolerances tol;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const ConvexSetV X(gaussian_points(8, 3, rng));
    const SupportOracle s = [&](const Vec& v) { return support_function(X, v); };
    // A vertex attains the minimum along some direction u; push it along -u.
    Vec u = gaussian_points(1, 3, rng)[0];
    u /= u.norm();
    Vec vertex = X.points().front();
    for (const auto& p : X.points()) {
      if (p.dot(u) < vertex.dot(u)) vertex = p;
    }
    const Vec alpha = vertex - 10.0 * tol.mem * u;
    const auto verdict = membership_reconstruct(alpha, s, {u}, &X);
    EXPECT_EQ(verdict.kind, MembershipVerdict::Kind::outside);
    EXPECT_FALSE(contains(X, alpha));
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Membership, ConvexCombinationsAreInside) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const auto pts = gaussian_points(6, 3, rng);
    const ConvexSetV X(pts, {v3(1, 1, 1)});
    Vec combo = Vec::Zero(3);
    double total = 0.0;
    for (const auto& p : pts) {
      const double w = u(rng);
      combo += w * p;
      total += w;
    }
    EXPECT_TRUE(contains(X, combo / total + 3.0 * v3(1, 1, 1)));
  }
}

TEST(Properness, Examples) {
  const ConvexSetV orthant({v2(0, 0)}, {v2(1, 0), v2(0, 1)});
  EXPECT_TRUE(properness_check(orthant, v2(1, 1), 1.0));
  EXPECT_TRUE(properness_check(ConvexSetV({v2(0, 0)}), v2(3, -1), 0.0));
  EXPECT_FALSE(properness_check(orthant, v2(1, 0), 0.0));
  EXPECT_THROW(properness_check(orthant, v2(-1, 0), 0.0), PreconditionError);
}

TEST(WeightedDeltaFamily, Examples) {
  const auto single = build_weighted_delta_family({"a"}, {1.0});
  EXPECT_EQ(single.dim(), 1);
  EXPECT_TRUE(semi_equicontinuity_certificate(single).verdict);

  const std::vector<double> omega{1.0, 2.0};
  const auto X = build_weighted_delta_family({"a", "b"}, omega);
  // Functions f with sup |f/omega - 1| < 1 are positive, so every delta pairs >= 0 with them.
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int t = 0; t < 100; ++t) {
    const Vec f = v2(omega[0] * (1 + u(rng)), omega[1] * (1 + u(rng)));
    for (const auto& d : X.points()) EXPECT_GE(d.dot(f), 0.0);
  }

  const auto Y = build_weighted_delta_family({"a", "b", "c"}, {1, 1, 1});
  EXPECT_NEAR(support_function(Y, v3(1, 1, 1)).value(), -1.0, 1e-15);
  EXPECT_THROW(build_weighted_delta_family({"a"}, {0.0}), InputError);
}

TEST(LinearGrowth, BoundHoldsOnVerticesAndRays) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    auto rays = gaussian_points(3, 3, rng);
    for (auto& r : rays) r(2) = std::abs(r(2)) + 0.3;
    const ConvexSetV X(gaussian_points(5, 3, rng), rays);
    const Vec v = v3(0, 0, 1);
    ASSERT_TRUE(domain_interior(X, v));
    const Vec w = gaussian_points(1, 3, rng)[0];
    const auto gb = linear_growth_bound(X, v, w);
    ASSERT_GT(gb.epsilon, 0.0);
    for (const auto& p : X.points()) {
      EXPECT_LE(std::abs(p.dot(w)), (p.dot(v) + gb.offset) / gb.epsilon + 1e-9);
    }
    // Along rays the bound must hold asymptotically: |<r, w>| <= <r, v> / eps.
    for (const auto& r : X.rays()) EXPECT_LE(std::abs(r.dot(w)), r.dot(v) / gb.epsilon + 1e-9);
  }
}
