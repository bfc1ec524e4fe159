#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momentumlab/convex.hpp"
#include "momentumlab/unirep.hpp"

// Momentum map Phi([v])(x) = <d pi(x) v, v> / (i <v, v>) and estimates of
// the momentum set I_pi, the closed convex hull of its image.
//
// For every direction x, sup Spec(i d pi(x)) = -inf <I_pi, x>; the estimate
// pairs an inner hull of sampled momentum values with these eigenvalue
// support values as outer bounds.
namespace momentumlab::momentum {

class ProjectiveVector {
 public:
  explicit ProjectiveVector(CVec v);
  [[nodiscard]] const CVec& vec() const { return v_; }

 private:
  CVec v_;
};

struct SupportRow {
  Vec direction;
  double inner = 0.0;  // -inf <inner hull, x>
  double outer = 0.0;  // sup Spec(i d pi(x))
  [[nodiscard]] double gap() const { return outer - inner; }
};

struct MomentumSetEstimate {
  convex::ConvexSetV inner;
  std::vector<SupportRow> table;
  double gap = 0.0;  // max over directions of outer - inner
  int n_samples = 0;
  bool injected = true;
};

struct EquivarianceResult {
  double residual = 0.0;
  std::optional<std::string> warning;  // set for truncated representations
};

struct DirectionGrowth {
  Vec direction;
  std::vector<int> levels;
  std::vector<double> sup_values;
  double loglog_slope = 0.0;  // slope of log(1 + |s|) against log N
  double linear_slope = 0.0;  // least-squares slope of s against N
  double increase = 0.0;      // s(N_last) - s(N_first)
  bool bounded = false;
};

struct BoundednessVerdict {
  enum class Kind { bounded, semibounded, unbounded_directionwise };
  Kind kind = Kind::bounded;
  std::vector<Vec> witnesses;
  double equicontinuity_constant = 0.0;  // single representations only
  std::vector<DirectionGrowth> growth;   // truncation families only
  std::optional<Vec> interior_point;     // point of the estimated B(I_pi)^0
};

std::string to_string(BoundednessVerdict::Kind kind);

struct GrowthOptions {
  double max_loglog_slope = 0.1;
  double tau_growth = 1e-6;
};

/// Phi([v]) in dual-basis coordinates; invariant under v -> lambda v.
Vec momentum_map(const unirep::UnitaryRep& rep, const ProjectiveVector& v);

/// +-basis vectors followed by `count` unit directions: a Fibonacci lattice
/// for d = 3, equally spaced angles for d = 2, seeded Gaussian directions for
/// d > 3. For d = 1 only +-1 are returned.
std::vector<Vec> default_directions(int d, int count, std::uint64_t seed = 0);

/// Inner hull of Phi over n_samples Gaussian projective samples (stream i of
/// `seed` for sample i), plus the top eigenvectors of i d pi(x) for every
/// direction when `inject_top_eigenvectors` is set. Deterministic in seed
/// regardless of MOMENTUMLAB_THREADS.
MomentumSetEstimate momentum_set_estimate(const unirep::UnitaryRep& rep, int n_samples,
                                          const std::vector<Vec>& directions, std::uint64_t seed,
                                          bool inject_top_eigenvectors = true);

/// || Phi([pi(exp y) v]) - Ad*(exp y) Phi([v]) ||.
EquivarianceResult equivariance_residual(const unirep::UnitaryRep& rep, const Vec& y,
                                         const ProjectiveVector& v);

/// A single finite-dimensional representation is always bounded; the
/// verdict records C = sum ||A_i||.
BoundednessVerdict classify_boundedness(const unirep::UnitaryRep& rep);

/// Truncation family with increasing Hilbert-space dimension (>= 3 levels).
/// Each probe direction is labelled bounded when its support value neither
/// grows (log-log slope) nor increases beyond tau_growth across the family;
/// the bounded directions generate the estimate of B(I_pi), and the family is
/// semibounded when that cone has interior. Probes are {-1,0,1}^d \ {0} for
/// d <= 4, otherwise +-basis vectors.
BoundednessVerdict classify_boundedness(const std::vector<unirep::UnitaryRep>& family,
                                        const GrowthOptions& options = {});

/// Orthonormal basis of { x : <alpha, x> = 0 for all points alpha of X }.
RMat annihilator(const convex::ConvexSetV& X, double tol = 1e-9);

}  // namespace momentumlab::momentum
