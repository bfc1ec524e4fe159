#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "momentumlab/liealg.hpp"
#include "momentumlab/linalg.hpp"
#include "momentumlab/momentum.hpp"

using namespace momentumlab;
using namespace momentumlab::momentum;
using Kind = BoundednessVerdict::Kind;

namespace {

Vec gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

double inner_support(const MomentumSetEstimate& est, const Vec& x) { return -est.inner.min_point_pairing(x); }

}  // namespace

TEST(MomentumMap, ZeroRepresentation) {
  const auto rep = unirep::zero_rep(liealg::su2(), 3);
  std::mt19937_64 rng(1);
  EXPECT_TRUE(momentum_map(rep, ProjectiveVector(linalg::complex_gaussian(3, rng))).isZero(0.0));
}

TEST(MomentumMap, SpinHalfHighestWeight) {
  CVec v = CVec::Zero(2);
  v(0) = 1.0;
  const Vec phi = momentum_map(unirep::su2_spin(1), ProjectiveVector(v));
  EXPECT_NEAR(phi(0), 0.0, 1e-15);
  EXPECT_NEAR(phi(1), 0.0, 1e-15);
  EXPECT_NEAR(phi(2), -0.5, 1e-15);
}

TEST(MomentumMap, ProjectiveInvariance) {
  const auto rep = unirep::su2_spin(3);
  std::mt19937_64 rng(2);
  const CVec v = linalg::complex_gaussian(4, rng);
  const Vec a = momentum_map(rep, ProjectiveVector(v));
  const Vec b = momentum_map(rep, ProjectiveVector(cplx(3.0, -4.0) * v));
  EXPECT_LE((a - b).norm(), 1e-12);
  EXPECT_THROW(ProjectiveVector(CVec::Zero(3)), InputError);
}

TEST(MomentumMap, ValuesLieBetweenExtremeEigenvalues) {
  const auto rep = unirep::su2_spin(4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec phi = momentum_map(rep, ProjectiveVector(linalg::complex_gaussian(5, rng)));
    const Vec x = gaussian(3, rng);
    // -<Phi, x> is a Rayleigh quotient of i d pi(x).
    EXPECT_LE(-phi.dot(x), unirep::spectral_sup(rep, x) + 1e-10);
  }
}

TEST(MomentumSetEstimate, ZeroRepresentation) {
  const auto est = momentum_set_estimate(unirep::zero_rep(liealg::su2(), 2), 10, default_directions(3, 8), 1);
  ASSERT_EQ(est.inner.points().size(), 1u);
  EXPECT_TRUE(est.inner.points()[0].isZero(0.0));
  for (const auto& row : est.table) EXPECT_EQ(row.outer, 0.0);
  EXPECT_EQ(est.gap, 0.0);
}

TEST(MomentumSetEstimate, SpinJSandwichWithInjection) {
  for (int two_j : {1, 2, 5, 8}) {
    const auto rep = unirep::su2_spin(two_j);
    const auto est = momentum_set_estimate(rep, 200, default_directions(3, 64), 5);
    EXPECT_LE(std::abs(est.gap), 1e-10);
    for (const auto& row : est.table) {
      EXPECT_LE(row.inner, row.outer + 1e-10);
      EXPECT_LE(row.outer, row.inner + 1e-10);
    }
    EXPECT_NEAR(inner_support(est, Vec::Unit(3, 2)), two_j / 2.0, 1e-10);
  }
}

TEST(MomentumSetEstimate, WithoutInjectionOnlyLowerBound) {
  const auto rep = unirep::su2_spin(6);
  const auto est = momentum_set_estimate(rep, 50, default_directions(3, 64), 6, false);
  EXPECT_FALSE(est.injected);
  for (const auto& row : est.table) EXPECT_LE(row.inner, row.outer + 1e-10);
  EXPECT_GT(est.gap, 1e-3);
}

TEST(MomentumSetEstimate, AbelianTriangle) {
  std::vector<Vec> w = {Vec::Zero(2), Vec::Unit(2, 0), Vec::Unit(2, 1)};
  const auto rep = unirep::abelian_diagonal(w);
  const auto dirs = default_directions(2, 64);
  const auto est = momentum_set_estimate(rep, 100, dirs, 7);
  for (const auto& row : est.table) {
    // Support function of the triangle by enumeration of its vertices.
    double s = -1e300;
    for (const auto& p : w) s = std::max(s, -p.dot(row.direction));
    EXPECT_NEAR(row.outer, s, 1e-10);
    EXPECT_NEAR(row.inner, s, 1e-10);
  }
  for (const auto& p : est.inner.points()) {
    EXPECT_GE(p.minCoeff(), -1e-12);
    EXPECT_LE(p.sum(), 1.0 + 1e-12);
  }
}

TEST(MomentumSetEstimate, DeterministicAcrossThreadCounts) {
  const auto rep = unirep::su2_spin(4);
  const auto dirs = default_directions(3, 16);
  setenv("MOMENTUMLAB_THREADS", "1", 1);
  const auto a = momentum_set_estimate(rep, 300, dirs, 42);
  setenv("MOMENTUMLAB_THREADS", "4", 1);
  const auto b = momentum_set_estimate(rep, 300, dirs, 42);
  unsetenv("MOMENTUMLAB_THREADS");
  ASSERT_EQ(a.inner.points().size(), b.inner.points().size());
  for (size_t i = 0; i < a.inner.points().size(); ++i) EXPECT_EQ(a.inner.points()[i], b.inner.points()[i]);
  const auto c = momentum_set_estimate(rep, 300, dirs, 43);
  EXPECT_NE(a.inner.points()[0], c.inner.points()[0]);
}

TEST(MomentumSetEstimate, CoadjointInvariance) {
  const auto rep = unirep::su2_spin(3);
  const auto dirs = default_directions(3, 32);
  const auto est = momentum_set_estimate(rep, 200, dirs, 8);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const RMat Ad = liealg::adjoint_of_exp(gaussian(3, rng), rep.algebra());
    std::vector<Vec> moved;
    for (const auto& p : est.inner.points()) moved.push_back(liealg::coadjoint(Ad, p));
    const convex::ConvexSetV J(moved);
    for (const auto& x : dirs) {
      const Vec y = Ad * x;
      EXPECT_NEAR(-J.min_point_pairing(y), inner_support(est, x), 1e-8);
      EXPECT_NEAR(unirep::spectral_sup(rep, y), unirep::spectral_sup(rep, x), 1e-8);
    }
  }
}

TEST(MomentumSetEstimate, SubrepresentationMonotonicity) {
  const auto block = unirep::su2_spin(2);
  const auto sum = unirep::direct_sum(block, unirep::su2_spin(4));
  const auto est = momentum_set_estimate(block, 100, default_directions(3, 32), 10);
  const convex::SupportOracle s = [&](const Vec& v) { return convex::ExtendedReal(unirep::spectral_sup(sum, v)); };
  const auto probes = default_directions(3, 128);
  for (const auto& p : est.inner.points()) {
    EXPECT_NE(convex::membership_reconstruct(p, s, probes).kind, convex::MembershipVerdict::Kind::outside);
  }
}

TEST(Equivariance, Examples) {
  const auto spin1 = unirep::su2_spin(2);
  std::mt19937_64 rng(11);
  const ProjectiveVector v0(linalg::complex_gaussian(3, rng));
  EXPECT_LE(equivariance_residual(spin1, Vec::Zero(3), v0).residual, 1e-14);
  for (int t = 0; t < 20; ++t) {
    const auto r = equivariance_residual(spin1, gaussian(3, rng), ProjectiveVector(linalg::complex_gaussian(3, rng)));
    EXPECT_LE(r.residual, 1e-9);
    EXPECT_FALSE(r.warning.has_value());
  }
  const auto osc = unirep::oscillator_truncated(12);
  CVec edge = CVec::Zero(12);
  edge(10) = 1.0;
  edge(11) = 1.0;
  const auto r = equivariance_residual(osc, 0.5 * Vec::Unit(4, 0), ProjectiveVector(edge));
  ASSERT_TRUE(r.warning.has_value());
  EXPECT_GT(r.residual, 1e-6);
}

TEST(Classify, SingleRepresentationIsBounded) {
  const auto rep = unirep::su2_spin(4);
  const auto v = classify_boundedness(rep);
  EXPECT_EQ(v.kind, Kind::bounded);
  EXPECT_NEAR(v.equicontinuity_constant, unirep::seminorm_constant(rep), 1e-15);
  // |<I, x>| <= ||d pi(x)|| <= C max |x_i|.
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const Vec x = gaussian(3, rng);
    EXPECT_LE(std::abs(unirep::spectral_sup(rep, x)), v.equicontinuity_constant * x.cwiseAbs().maxCoeff() + 1e-12);
  }
}

TEST(Classify, OscillatorFamilyIsSemibounded) {
  const std::vector<unirep::UnitaryRep> fam = {unirep::oscillator_truncated(16), unirep::oscillator_truncated(32),
                                               unirep::oscillator_truncated(64)};
  const auto v = classify_boundedness(fam);
  EXPECT_EQ(v.kind, Kind::semibounded);
  ASSERT_TRUE(v.interior_point.has_value());
  EXPECT_LT((*v.interior_point)(3), 0.0);  // interior direction leans towards -h
  bool saw_minus_h = false;
  for (const auto& g : v.growth) {
    if (g.direction == -Vec::Unit(4, 3)) {
      saw_minus_h = true;
      EXPECT_TRUE(g.bounded);
      for (double s : g.sup_values) EXPECT_NEAR(s, 0.0, 1e-12);
    }
    if (g.direction == Vec::Unit(4, 3)) {
      EXPECT_FALSE(g.bounded);
      EXPECT_NEAR(g.linear_slope, 1.0, 1e-9);
    }
  }
  EXPECT_TRUE(saw_minus_h);
}

TEST(Classify, HeisenbergFamilyHasNoInteriorDirection) {
  const std::vector<unirep::UnitaryRep> fam = {unirep::heisenberg_truncated(16), unirep::heisenberg_truncated(32),
                                               unirep::heisenberg_truncated(64)};
  const auto v = classify_boundedness(fam);
  EXPECT_EQ(v.kind, Kind::unbounded_directionwise);
  EXPECT_FALSE(v.witnesses.empty());
  for (const auto& g : v.growth) {
    const bool central = g.direction(0) == 0.0 && g.direction(1) == 0.0;
    EXPECT_EQ(g.bounded, central) << g.direction.transpose();
  }
  EXPECT_EQ(to_string(v.kind), "unbounded-directionwise");
}

TEST(Classify, NeedsThreeIncreasingLevels) {
  EXPECT_THROW(classify_boundedness(std::vector<unirep::UnitaryRep>{unirep::oscillator_truncated(8),
                                                                    unirep::oscillator_truncated(16)}),
               InputError);
  EXPECT_THROW(classify_boundedness(std::vector<unirep::UnitaryRep>{unirep::oscillator_truncated(16),
                                                                    unirep::oscillator_truncated(8),
                                                                    unirep::oscillator_truncated(32)}),
               InputError);
}

TEST(Annihilator, MatchesKernelOfDerivedRepresentation) {
  const std::vector<unirep::UnitaryRep> reps = {
      unirep::su2_spin(2), unirep::abelian_diagonal({Vec::Unit(2, 0), Vec::Zero(2), -Vec::Unit(2, 0)}),
      unirep::zero_rep(liealg::su2(), 2), unirep::abelian_diagonal({Vec::Unit(2, 0), Vec::Unit(2, 1)})};
  for (const auto& rep : reps) {
    const auto est = momentum_set_estimate(rep, 100, default_directions(rep.dim(), 16), 13);
    const RMat A = annihilator(est.inner);
    const RMat K = unirep::kernel_of_d_pi(rep);
    ASSERT_EQ(A.cols(), K.cols()) << rep.label();
    if (A.cols() > 0) {
      // Same subspace: projections agree.
      EXPECT_LE((A * A.transpose() - K * K.transpose()).norm(), 1e-9);
    }
  }
}

TEST(DefaultDirections, Shapes) {
  EXPECT_EQ(default_directions(1, 10).size(), 2u);
  EXPECT_EQ(default_directions(3, 64).size(), 70u);
  for (const auto& v : default_directions(5, 10, 3)) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}
