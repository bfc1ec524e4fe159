#pragma once

#include <vector>

#include "momentumlab/types.hpp"

namespace momentumlab::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vec x;                       // primal solution (standard-form variables)
  Vec duals;                   // y with A^T y <= c at optimum (row multipliers)
  double objective = 0.0;
  std::vector<int> basis;      // column indices of the final basis
};

/// Dense two-phase simplex for  min c^T x  s.t.  A x = b, x >= 0.
///
/// Bland's rule is used throughout, so the method terminates on degenerate
/// problems. Intended for desk-scale instances (a few dozen rows, up to tens
/// of thousands of columns). Redundant equality rows are detected in phase 1
/// and dropped; their multipliers are reported as zero.
Result solve_standard(const RMat& A, const Vec& b, const Vec& c,
                      double feas_tol = 1e-9);

}  // namespace momentumlab::lp
