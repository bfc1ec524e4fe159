#include <gtest/gtest.h>

#include "momentumlab/lp.hpp"

using namespace momentumlab;

TEST(Simplex, SolvesSmallProblemWithDuals) {
  // min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6.
  RMat A(2, 4);
  A << 1, 2, 1, 0, 3, 1, 0, 1;
  Vec b(2), c(4);
  b << 4, 6;
  c << -1, -1, 0, 0;
  const auto r = lp::solve_standard(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  EXPECT_NEAR(r.x(0), 1.6, 1e-12);
  EXPECT_NEAR(r.x(1), 1.2, 1e-12);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
  // Strong duality and dual feasibility.
  EXPECT_NEAR(b.dot(r.duals), r.objective, 1e-12);
  const Vec reduced = c - A.transpose() * r.duals;
  EXPECT_GE(reduced.minCoeff(), -1e-12);
}

TEST(Simplex, DetectsInfeasibility) {
  RMat A(1, 1);
  A << 1;
  Vec b(1), c(1);
  b << -1;
  c << 0;
  EXPECT_EQ(lp::solve_standard(A, b, c).status, lp::Status::infeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  RMat A(1, 2);
  A << 1, -1;
  Vec b(1), c(2);
  b << 0;
  c << -1, 0;
  EXPECT_EQ(lp::solve_standard(A, b, c).status, lp::Status::unbounded);
}

TEST(Simplex, DropsRedundantRows) {
  RMat A(2, 2);
  A << 1, 1, 2, 2;
  Vec b(2), c(2);
  b << 1, 2;
  c << 1, 2;
  const auto r = lp::solve_standard(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
}

TEST(Simplex, TerminatesOnDegenerateCycleExample) {
  // Beale's example, which cycles under the largest-coefficient rule.
  RMat A(3, 7);
  A << 0.25, -8, -1, 9, 1, 0, 0,
       0.5, -12, -0.5, 3, 0, 1, 0,
       0, 0, 1, 0, 0, 0, 1;
  Vec b(3), c(7);
  b << 0, 0, 1;
  c << -0.75, 20, -0.5, 6, 0, 0, 0;
  const auto r = lp::solve_standard(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  // Optimum at x1 = x3 = 1 with the first slack at 3/4.
  EXPECT_NEAR(r.objective, -1.25, 1e-12);
}
