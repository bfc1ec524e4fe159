#include "momentumlab/lp.hpp"

#include <cmath>
#include <limits>

namespace momentumlab::lp {
namespace {

constexpr double kPivotEps = 1e-11;

// Tableau layout: rows 0..m-1 constraints, row m objective (reduced costs);
// last column holds the right-hand side.
struct Tableau {
  RMat t;
  std::vector<int> basis;
  int m = 0;
  int n = 0;  // number of structural columns (excluding rhs)

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= m; ++r) {
      if (r == row) continue;
      const double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[static_cast<size_t>(row)] = col;
  }

  // Bland's rule over the first `ncols` columns. Returns false when unbounded.
  bool optimize(int ncols) {
    const double scale = std::max(1.0, t.row(m).head(ncols).cwiseAbs().maxCoeff());
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (t(m, j) < -kPivotEps * scale) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = t(r, enter);
        if (a > kPivotEps) {
          const double ratio = t(r, n) / a;
          if (ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
               basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result solve_standard(const RMat& A, const Vec& b, const Vec& c, double feas_tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) {
    throw InputError("lp::solve_standard: dimension mismatch");
  }
  Result res;
  if (m == 0) {
    // Only x >= 0; optimum is 0 unless some cost is negative.
    res.x = Vec::Zero(n);
    res.duals = Vec::Zero(0);
    res.status = (c.array() < 0).any() ? Status::unbounded : Status::optimal;
    return res;
  }

  // Phase 1: artificials a >= 0 with A x + a = |b| after sign normalisation.
  Tableau tab;
  tab.m = m;
  tab.n = n + m;
  tab.t = RMat::Zero(m + 1, n + m + 1);
  Vec sign = Vec::Ones(m);
  for (int r = 0; r < m; ++r) {
    if (b(r) < 0) sign(r) = -1.0;
    tab.t.row(r).head(n) = sign(r) * A.row(r);
    tab.t(r, n + r) = 1.0;
    tab.t(r, n + m) = sign(r) * b(r);
  }
  tab.basis.resize(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) tab.basis[static_cast<size_t>(r)] = n + r;
  // Phase-1 reduced costs: minimise sum of artificials.
  for (int r = 0; r < m; ++r) tab.t.row(m) -= tab.t.row(r);
  for (int r = 0; r < m; ++r) tab.t(m, n + r) = 0.0;

  tab.optimize(n + m);
  const double bscale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (-tab.t(m, n + m) > feas_tol * bscale) {
    res.status = Status::infeasible;
    return res;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // linearly dependent and get removed.
  std::vector<int> keep_rows;
  for (int r = 0; r < m; ++r) {
    if (tab.basis[static_cast<size_t>(r)] >= n) {
      int col = -1;
      double best = kPivotEps;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab.t(r, j)) > best) {
          best = std::abs(tab.t(r, j));
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(r, col);
        keep_rows.push_back(r);
      }
    } else {
      keep_rows.push_back(r);
    }
  }

  // Phase 2 tableau over structural columns only.
  Tableau p2;
  p2.m = static_cast<int>(keep_rows.size());
  p2.n = n;
  p2.t = RMat::Zero(p2.m + 1, n + 1);
  p2.basis.resize(keep_rows.size());
  for (int i = 0; i < p2.m; ++i) {
    const int r = keep_rows[static_cast<size_t>(i)];
    p2.t.row(i).head(n) = tab.t.row(r).head(n);
    p2.t(i, n) = tab.t(r, n + m);
    p2.basis[static_cast<size_t>(i)] = tab.basis[static_cast<size_t>(r)];
  }
  p2.t.row(p2.m).head(n) = c.transpose();
  for (int i = 0; i < p2.m; ++i) {
    const int col = p2.basis[static_cast<size_t>(i)];
    const double f = p2.t(p2.m, col);
    if (f != 0.0) p2.t.row(p2.m) -= f * p2.t.row(i);
  }
  if (!p2.optimize(n)) {
    res.status = Status::unbounded;
    return res;
  }

  res.status = Status::optimal;
  res.x = Vec::Zero(n);
  for (int i = 0; i < p2.m; ++i) {
    res.x(p2.basis[static_cast<size_t>(i)]) = std::max(0.0, p2.t(i, n));
  }
  res.objective = c.dot(res.x);
  res.basis = p2.basis;

  // Multipliers from the original rows: A_B^T y = c_B (minimum-norm solve
  // covers the dropped dependent rows).
  RMat AB(m, p2.m);
  Vec cB(p2.m);
  for (int i = 0; i < p2.m; ++i) {
    AB.col(i) = A.col(p2.basis[static_cast<size_t>(i)]);
    cB(i) = c(p2.basis[static_cast<size_t>(i)]);
  }
  res.duals = AB.transpose().completeOrthogonalDecomposition().solve(cB);
  return res;
}

}  // namespace momentumlab::lp
