#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "momentumlab/momentum.hpp"
#include "momentumlab/rkhs.hpp"

using namespace momentumlab;
using namespace momentumlab::rkhs;

namespace {

Point pt(cplx a) { return Point::Constant(1, a); }

Point pt2(cplx a, cplx b) {
  Point p(2);
  p << a, b;
  return p;
}

std::vector<Point> circle_points(int n, double r, double phase = 0.0) {
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) out.push_back(pt(std::polar(r, phase + 2 * std::numbers::pi * k / n)));
  return out;
}

std::vector<Point> well_spread_model() {
  std::vector<Point> pts{pt(0.0)};
  for (const auto& p : circle_points(5, 1.0)) pts.push_back(p);
  for (const auto& p : circle_points(3, 1.8, 0.5)) pts.push_back(p);
  return pts;
}

GroupActionOnM trivial_action(int d) {
  GroupActionOnM a;
  a.group_dim = d;
  a.algebra_dim = d;
  a.label = "trivial";
  a.act = [](const Point& m, const Vec&) { return m; };
  a.compose = [](const Vec& g, const Vec& h) -> Vec { return g + h; };
  a.flow = [](const Point& m, const Vec&, double) { return m; };
  a.complex_flow = [](const Point& m, const Vec&, cplx) { return m; };
  for (int k = 0; k < d; ++k) {
    a.extension_cone.push_back(Vec::Unit(d, k));
    a.extension_cone.push_back(-Vec::Unit(d, k));
  }
  return a;
}

KernelSpec rank_one_kernel() {
  KernelSpec k;
  k.domain_dim = 1;
  k.label = "rank-one";
  k.eval = [](const Point& z, const Point& w) { return z(0) * std::conj(w(0)); };
  return k;
}

}  // namespace

TEST(Gram, FockExamples) {
  const auto K = fock_kernel(1);
  const auto g1 = gram_matrix(K, {pt(0.0)});
  EXPECT_EQ(g1.gram(0, 0), cplx(1.0, 0.0));
  EXPECT_TRUE(g1.psd);
  const auto g2 = gram_matrix(K, {pt(0.0), pt(1.0)});
  EXPECT_NEAR(std::abs(g2.gram(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g2.gram(1, 1) - std::exp(1.0)), 0.0, 1e-15);
  EXPECT_GT(g2.min_eigenvalue, 0.0);
  EXPECT_THROW(gram_matrix(K, {pt(0.5), pt(0.5)}), InputError);
}

TEST(Gram, NonPositiveKernelIsFlagged) {
  KernelSpec k;
  k.domain_dim = 1;
  k.label = "not-a-kernel";
  k.eval = [](const Point& z, const Point& w) { return z(0) + std::conj(w(0)); };
  const auto g = gram_matrix(k, {pt(0.0), pt(1.0)});
  EXPECT_FALSE(g.psd);
  EXPECT_NEAR(g.min_eigenvalue, 1.0 - std::sqrt(2.0), 1e-12);
  EXPECT_THROW(FiniteModel(k, {pt(0.0), pt(1.0)}), InputError);
}

TEST(Gram, ShippedKernelsAreHermitianAndPositive) {
  std::mt19937_64 rng(1);
  for (int d : {1, 2}) {
    const auto K = fock_kernel(d);
    const auto sampler = polydisc_sampler(d, 1.5);
    std::vector<Point> pts;
    for (size_t i = 0; i < 12; ++i) pts.push_back(sampler(rng, 100 + i));
    const auto g = gram_matrix(K, pts);
    EXPECT_TRUE(g.psd);
    EXPECT_LE((g.gram - g.gram.adjoint()).norm(), 1e-12 * g.gram.norm());
  }
  const auto H = hardy_kernel();
  const auto g = gram_matrix(H, circle_points(6, 0.7));
  EXPECT_TRUE(g.psd);
  EXPECT_THROW(gram_matrix(H, {pt(1.5)}), DomainError);
}

TEST(Reproducing, IdentityOnTheSpan) {
  const auto K = fock_kernel(1);
  std::mt19937_64 rng(2);
  const auto sampler = polydisc_sampler(1, 1.0);
  std::vector<Point> pts;
  for (size_t i = 0; i < 8; ++i) pts.push_back(sampler(rng, 10 + i));
  const FiniteModel model(K, pts);
  std::normal_distribution<double> g;
  CVec c(8);
  for (int i = 0; i < 8; ++i) c(i) = cplx(g(rng), g(rng));
  for (const auto& z : pts) EXPECT_LE(reproducing_check(model, c, z), 1e-10);
  EXPECT_EQ(reproducing_check(model, CVec::Zero(8), pts[3]), 0.0);
  CVec e = CVec::Zero(8);
  e(0) = 1.0;
  EXPECT_EQ(reproducing_check(model, e, pts[0]), 0.0);
  EXPECT_THROW(reproducing_check(model, c, pt(3.0)), PreconditionError);
}

TEST(Invariance, RotationTranslationIdentity) {
  const auto K = fock_kernel(1);
  const auto rot = torus_rotation(1);
  const std::vector<Vec> thetas = {Vec::Constant(1, 0.3), Vec::Constant(1, -2.0), Vec::Constant(1, 5.5)};
  const auto pts = circle_points(4, 1.3, 0.2);
  EXPECT_LE(invariance_residual(K, rot, thetas, pts), 1e-12);
  EXPECT_LE(action_law_residual(rot, thetas, pts), 1e-12);
  const auto tr = real_translation(1);
  EXPECT_GT(invariance_residual(K, tr, thetas, pts), 1e-3);
  EXPECT_EQ(invariance_residual(K, tr, {Vec::Zero(1)}, pts), 0.0);
  // Leaving the Hardy disc is a domain error.
  EXPECT_THROW(invariance_residual(hardy_kernel(), tr, {Vec::Constant(1, 0.9)}, circle_points(3, 0.5)),
               DomainError);
}

TEST(KernelMomentum, FockRotationClosedForm) {
  const auto K = fock_kernel(1);
  const auto rot = torus_rotation(1);
  const Vec e1 = Vec::Unit(1, 0);
  EXPECT_EQ(kernel_momentum_value(K, rot, Vec::Zero(1), pt(1.0)), 0.0);
  EXPECT_NEAR(kernel_momentum_value(K, rot, e1, pt(0.0)), 0.0, 1e-12);
  for (const auto& m : {pt(0.5), pt(cplx(1.0, -1.2)), pt(2.0)}) {
    EXPECT_NEAR(kernel_momentum_value(K, rot, e1, m), -std::norm(m(0)), 1e-8);
  }
  EXPECT_THROW(kernel_momentum_value(rank_one_kernel(), rot, e1, pt(0.0)), PreconditionError);
}

TEST(KernelMomentum, AgreesWithTruncatedOracle) {
  const auto K = fock_kernel(1);
  const auto rot = torus_rotation(1);
  const auto oracle = fock_rotation_oracle(1, 64);
  std::mt19937_64 rng(3);
  const auto sampler = polydisc_sampler(1, 2.0);
  for (size_t i = 0; i < 30; ++i) {
    const Point m = sampler(rng, i);
    const double phi = kernel_momentum_value(K, rot, Vec::Unit(1, 0), m);
    const Vec o = momentum::momentum_map(oracle, momentum::ProjectiveVector(fock_section_coefficients(m, 64)));
    EXPECT_NEAR(phi, o(0), 1e-6);
  }
}

TEST(KernelMomentum, TwoVariableIsSeparable) {
  const auto K = fock_kernel(2);
  const auto rot = torus_rotation(2);
  const Point m = pt2(cplx(0.4, 0.3), cplx(-1.0, 0.5));
  const Vec phi = kernel_momentum(K, rot, m);
  EXPECT_NEAR(phi(0), -0.25, 1e-8);
  EXPECT_NEAR(phi(1), -1.25, 1e-8);
}

TEST(KernelMomentumSet, FockHullAndOuterSupport) {
  const auto K = fock_kernel(1);
  const auto rot = torus_rotation(1);
  const auto oracle = fock_rotation_oracle(1, 64);
  const Vec e1 = Vec::Unit(1, 0);
  for (double R : {1.0, 2.0, 3.0}) {
    const auto set = kernel_momentum_set(K, rot, {e1, Vec(-e1)}, polydisc_sampler(1, R), 50, 4, &oracle);
    EXPECT_EQ(set.used_points, 50);
    EXPECT_NEAR(-set.inner.min_point_pairing(e1), R * R, 1e-6);
    EXPECT_NEAR(-set.inner.min_point_pairing(-e1), 0.0, 1e-6);
    // On the contracting direction the truncated model and the kernel set agree.
    EXPECT_NEAR(set.table[1].outer, set.table[1].inner, 1e-6);
    // Along +e1 the oracle bound is the truncation level, far above R^2.
    EXPECT_GE(set.table[0].outer, set.table[0].inner);
  }
}

TEST(KernelMomentumSet, InfimumMatchesMatrixEstimateOnExtensionCone) {
  const auto K = fock_kernel(1);
  const auto rot = torus_rotation(1);
  const auto oracle = fock_rotation_oracle(1, 64);
  const Vec x = -Vec::Unit(1, 0);
  const auto set = kernel_momentum_set(K, rot, {x}, polydisc_sampler(1, 2.0), 40, 5);
  const auto est = momentum::momentum_set_estimate(oracle, 200, {x}, 5);
  EXPECT_NEAR(set.inner.min_point_pairing(x), est.inner.min_point_pairing(x), std::abs(est.gap) + 1e-6);
}

TEST(KernelMomentumSet, TwoTorusQuadrant) {
  const auto K = fock_kernel(2);
  const auto rot = torus_rotation(2);
  const double R = 1.5;
  const auto set = kernel_momentum_set(K, rot, momentum::default_directions(2, 8), polydisc_sampler(2, R), 40, 6);
  for (const auto& p : set.inner.points()) {
    EXPECT_LE(p.maxCoeff(), 1e-8);
    EXPECT_GE(p.minCoeff(), -R * R - 1e-8);
  }
  // Corner samples reach the product corners.
  EXPECT_NEAR(-set.inner.min_point_pairing(Vec::Ones(2)), 2 * R * R, 1e-6);
}

TEST(KernelMomentumSet, TrivialActionGivesZero) {
  const auto set = kernel_momentum_set(fock_kernel(1), trivial_action(1), {Vec::Unit(1, 0)},
                                       polydisc_sampler(1, 2.0), 10, 7);
  ASSERT_EQ(set.inner.points().size(), 1u);
  EXPECT_NEAR(set.inner.points()[0](0), 0.0, 1e-12);
}

TEST(KernelMomentumSet, SkipsBoundaryAndFailsWithoutOmega) {
  // K(m, m) = |m|^2 vanishes only at the origin, which sample 0 always hits.
  const auto set = kernel_momentum_set(rank_one_kernel(), trivial_action(1), {Vec::Unit(1, 0)},
                                       polydisc_sampler(1, 1.0), 10, 8);
  EXPECT_EQ(set.skipped_points, 1);
  EXPECT_EQ(set.used_points, 9);
  const PointSampler origin_only = [](std::mt19937_64&, std::size_t) { return pt(0.0); };
  EXPECT_THROW(kernel_momentum_set(rank_one_kernel(), trivial_action(1), {Vec::Unit(1, 0)}, origin_only, 5, 9),
               ComputationError);
}

TEST(KernelMomentumSet, RejectsFalseExtensionDeclaration) {
  auto rot = torus_rotation(1);
  rot.extension_cone = {Vec::Unit(1, 0)};  // expanding orientation
  EXPECT_THROW(kernel_momentum_set(fock_kernel(1), rot, {Vec::Unit(1, 0)}, polydisc_sampler(1, 1.0), 10, 10),
               PreconditionError);
}

TEST(Extension, JacobianContraction) {
  const auto rot = torus_rotation(1);
  const auto pts = circle_points(4, 1.0);
  EXPECT_TRUE(verify_extension(rot, -Vec::Unit(1, 0), pts));
  EXPECT_FALSE(verify_extension(rot, Vec::Unit(1, 0), pts));
  EXPECT_FALSE(verify_extension(real_translation(1), Vec::Unit(1, 0), pts));
}

TEST(Contraction, UnitaryAtZeroAndContractiveOnTheCone) {
  const auto rot = torus_rotation(1);
  const FiniteModel model(fock_kernel(1), well_spread_model());
  const Vec x = -Vec::Unit(1, 0);
  const auto c0 = contraction_check(rot, x, 0.0, model);
  EXPECT_NEAR(c0.lhs_norm, 1.0, 1e-8);
  for (double b : {0.1, 1.0, 10.0}) {
    const auto c = contraction_check(rot, x, b, model);
    EXPECT_TRUE(c.verdict) << b;
    EXPECT_LE(c.lhs_norm, 1.0 + 1e-6);
    EXPECT_NEAR(c.sup_value, 0.0, 1e-8);
    EXPECT_NEAR(c.rhs_bound, 1.0, 1e-8);
    // The constant function K_0 is fixed, so the bound is attained.
    EXPECT_NEAR(c.lhs_norm, c.rhs_bound, 1e-6);
  }
}

TEST(Contraction, PreconditionsAndConditioning) {
  const FiniteModel model(fock_kernel(1), well_spread_model());
  EXPECT_THROW(contraction_check(torus_rotation(1), Vec::Unit(1, 0), 1.0, model), PreconditionError);
  EXPECT_THROW(contraction_check(real_translation(1), Vec::Unit(1, 0), 1.0, model), PreconditionError);
  EXPECT_THROW(contraction_check(torus_rotation(1), -Vec::Unit(1, 0), -1.0, model), InputError);
  const FiniteModel crowded(fock_kernel(1), circle_points(12, 0.05));
  EXPECT_THROW(contraction_check(torus_rotation(1), -Vec::Unit(1, 0), 1.0, crowded), ComputationError);
}

TEST(Contraction, BoundTightensAsSamplesApproachTheMaximiser) {
  // Without the origin the sampled sup of <Phi, -x> = -|m|^2 is negative; as
  // the ring shrinks the sampled bound rises towards the norm.
  const auto rot = torus_rotation(1);
  double prev_gap = 1e300;
  for (double r : {1.2, 0.8, 0.5}) {
    const FiniteModel model(fock_kernel(1), circle_points(4, r));
    const auto c = contraction_check(rot, -Vec::Unit(1, 0), 1.0, model);
    const double gap = std::abs(c.rhs_bound - c.lhs_norm);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

TEST(Semigroup, LawOnTheSpan) {
  const auto rot = torus_rotation(1);
  const FiniteModel model(fock_kernel(1), {pt(0.0), pt(0.6), pt(cplx(0.0, 0.6)), pt(-0.6)});
  EXPECT_LE(semigroup_residual(rot, -Vec::Unit(1, 0), 0.5, 1.0, model), 1e-8);
  EXPECT_LE(semigroup_residual(rot, -Vec::Unit(1, 0), 0.0, 0.0, model), 1e-12);
}

TEST(FockOracle, SectionCoefficients) {
  const CVec c = fock_section_coefficients(pt(cplx(1.0, 1.0)), 4);
  EXPECT_NEAR(std::abs(c(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(1) - cplx(1.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(2) - cplx(0.0, -2.0) / std::sqrt(2.0)), 0.0, 1e-15);
  // |c|^2 approximates K(m, m) = e^{|m|^2}.
  EXPECT_NEAR(fock_section_coefficients(pt(1.0), 40).squaredNorm(), std::exp(1.0), 1e-12);
  EXPECT_TRUE(fock_rotation_oracle(2, 3).truncated());
  EXPECT_EQ(fock_rotation_oracle(2, 3).space_dim(), 9);
}
