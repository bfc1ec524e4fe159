#pragma once

#include <random>
#include <string>
#include <vector>

#include "momentumlab/convex.hpp"
#include "momentumlab/types.hpp"
#include "momentumlab/unirep.hpp"

// Unitary representations of a vector group (E, +) given by discrete
// spectral measures P = sum_k delta_{alpha_k} P_k:
//
//   pi(v) = sum_k exp(i <alpha_k, v>) P_k,
//   pi_hat(x + iy) = sum_k exp(i <alpha_k, x> - <alpha_k, y>) P_k,
//
// the latter on the tube E + i B(X)^0 for a declared convex X containing
// the atoms.
namespace momentumlab::abelian {

struct Atom {
  Vec alpha;
  CMat P;
};

class SpectralMeasureDiscrete {
 public:
  /// Validates: P_k Hermitian idempotent, P_k P_l = 0 (k != l), sum P_k = 1
  /// (all to 1e-10, Frobenius) and pairwise distinct alpha_k. Throws
  /// InputError naming the violated condition.
  explicit SpectralMeasureDiscrete(std::vector<Atom> atoms);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] int space_dim() const { return static_cast<int>(atoms_.front().P.rows()); }
  [[nodiscard]] int group_dim() const { return static_cast<int>(atoms_.front().alpha.size()); }

 private:
  std::vector<Atom> atoms_;
};

struct TubeElement {
  Vec x;  // real part
  Vec y;  // imaginary part, in B(X)^0
  /// (x + iy)* = -x + iy.
  [[nodiscard]] TubeElement star() const { return {-x, y}; }
};

TubeElement operator+(const TubeElement& s, const TubeElement& t);

struct NormReport {
  double norm = 0.0;   // operator norm of pi_hat(s)
  double bound = 0.0;  // exp(-inf <X, y>)
  bool satisfied = false;
};

struct Extension {
  CMat value;
  NormReport report;
};

struct ClusterEvent {
  int generator = 0;     // index of the generator whose eigenvalues merged
  int multiplicity = 0;  // eigenvalues in the cluster
  double spread = 0.0;   // max - min eigenvalue inside the cluster
};

struct Recovery {
  SpectralMeasureDiscrete measure;
  std::vector<ClusterEvent> cluster_events;
};

/// sum_k exp(i <alpha_k, v>) P_k.
CMat rep_from_measure(const SpectralMeasureDiscrete& P, const Vec& v);

/// Unchecked sum_k exp(i <alpha_k, x> - <alpha_k, y>) P_k.
CMat pi_hat(const SpectralMeasureDiscrete& P, const TubeElement& s);

/// pi_hat(s) with its norm report. When `X` is given it must contain every
/// atom and y must lie in B(X)^0 (PreconditionError otherwise); without X the
/// hull of the atoms is used.
Extension semigroup_extension(const SpectralMeasureDiscrete& P, const TubeElement& s,
                              const convex::ConvexSetV* X = nullptr,
                              const convex::Tolerances& tol = {});

/// conv{alpha_k : P_k != 0}.
convex::ConvexSetV momentum_set_of_measure(const SpectralMeasureDiscrete& P);

/// A_j = i sum_k <alpha_k, e_j> P_k.
std::vector<CMat> generators_of_measure(const SpectralMeasureDiscrete& P);

/// The measure as a unitary representation of the abelian algebra R^n.
unirep::UnitaryRep rep_of_measure(const SpectralMeasureDiscrete& P);

/// Joint diagonalisation of the Hermitian family -i A_j: eigenvalues of each
/// generator are clustered (tau_cluster) inside the eigenspaces of the
/// previous ones; atoms are the joint eigenvalue tuples. Throws
/// PreconditionError naming the first pair with || [A_i, A_j] || > 1e-8.
Recovery recover_measure(const std::vector<CMat>& generators, double tau_cluster = 1e-7);

/// Random measure on C^N with `n_atoms` atoms of random rank (>= 1) in a
/// Haar-random eigenbasis; atoms uniform in [lo, hi]^n, pairwise at least
/// `min_separation` apart in the max norm.
SpectralMeasureDiscrete random_measure(int N, int n, int n_atoms, std::mt19937_64& rng,
                                       double lo = 0.0, double hi = 1.0,
                                       double min_separation = 1e-3);

}  // namespace momentumlab::abelian
