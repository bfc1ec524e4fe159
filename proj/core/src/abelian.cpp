#include "momentumlab/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "momentumlab/linalg.hpp"
#include "momentumlab/liealg.hpp"

namespace momentumlab::abelian {
namespace {

constexpr double kMeasureTol = 1e-10;
constexpr double kCommuteTol = 1e-8;
constexpr double kZeroProjection = 1e-10;
constexpr double kClusterReport = 1e-11;

const cplx kI(0.0, 1.0);

void check_dims(const SpectralMeasureDiscrete& P, const Vec& v, const char* what) {
  if (v.size() != P.group_dim()) {
    throw InputError(std::string(what) + ": vector has dimension " + std::to_string(v.size()) +
                     ", expected " + std::to_string(P.group_dim()));
  }
}

struct Leaf {
  CMat basis;  // orthonormal columns spanning a joint eigenspace
};

}  // namespace

SpectralMeasureDiscrete::SpectralMeasureDiscrete(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("spectral measure: no atoms");
  const auto N = atoms_.front().P.rows();
  const auto n = atoms_.front().alpha.size();
  if (N == 0 || n == 0) throw InputError("spectral measure: empty projection or functional");
  CMat total = CMat::Zero(N, N);
  for (size_t k = 0; k < atoms_.size(); ++k) {
    const auto& a = atoms_[k];
    if (a.P.rows() != N || a.P.cols() != N) {
      throw InputError("spectral measure: projection " + std::to_string(k) + " has the wrong shape");
    }
    if (a.alpha.size() != n || !a.alpha.allFinite()) {
      throw InputError("spectral measure: functional " + std::to_string(k) + " is malformed");
    }
    if ((a.P - a.P.adjoint()).norm() > kMeasureTol) {
      throw InputError("spectral measure: P_" + std::to_string(k) + " is not Hermitian");
    }
    if ((a.P * a.P - a.P).norm() > kMeasureTol) {
      throw InputError("spectral measure: P_" + std::to_string(k) + " is not idempotent");
    }
    for (size_t l = 0; l < k; ++l) {
      if ((atoms_[l].P * a.P).norm() > kMeasureTol) {
        throw InputError("spectral measure: P_" + std::to_string(l) + " P_" + std::to_string(k) +
                         " != 0");
      }
      if (atoms_[l].alpha == a.alpha) {
        throw InputError("spectral measure: atoms " + std::to_string(l) + " and " + std::to_string(k) +
                         " coincide");
      }
    }
    total += a.P;
  }
  if ((total - CMat::Identity(N, N)).norm() > kMeasureTol) {
    throw InputError("spectral measure: projections do not sum to the identity");
  }
}

TubeElement operator+(const TubeElement& s, const TubeElement& t) { return {s.x + t.x, s.y + t.y}; }

CMat rep_from_measure(const SpectralMeasureDiscrete& P, const Vec& v) {
  check_dims(P, v, "rep_from_measure");
  const auto N = P.space_dim();
  CMat out = CMat::Zero(N, N);
  for (const auto& a : P.atoms()) out += std::exp(kI * a.alpha.dot(v)) * a.P;
  return out;
}

CMat pi_hat(const SpectralMeasureDiscrete& P, const TubeElement& s) {
  check_dims(P, s.x, "pi_hat");
  check_dims(P, s.y, "pi_hat");
  const auto N = P.space_dim();
  CMat out = CMat::Zero(N, N);
  for (const auto& a : P.atoms()) out += std::exp(cplx(-a.alpha.dot(s.y), a.alpha.dot(s.x))) * a.P;
  return out;
}

Extension semigroup_extension(const SpectralMeasureDiscrete& P, const TubeElement& s,
                              const convex::ConvexSetV* X, const convex::Tolerances& tol) {
  check_dims(P, s.x, "semigroup_extension");
  check_dims(P, s.y, "semigroup_extension");
  double bound_exponent = 0.0;
  if (X) {
    if (X->dim() != P.group_dim()) throw InputError("semigroup_extension: X has the wrong dimension");
    for (size_t k = 0; k < P.atoms().size(); ++k) {
      if (P.atoms()[k].P.norm() > kZeroProjection && !convex::contains(*X, P.atoms()[k].alpha, tol)) {
        throw PreconditionError("semigroup_extension: atom " + std::to_string(k) +
                                " lies outside the declared X");
      }
    }
    if (!convex::domain_interior(*X, s.y, tol)) {
      throw PreconditionError("semigroup_extension: y is not in the interior of B(X)");
    }
    bound_exponent = convex::support_function(*X, s.y, tol).value();
  } else {
    bound_exponent = convex::support_function(momentum_set_of_measure(P), s.y, tol).value();
  }
  Extension out;
  out.value = pi_hat(P, s);
  out.report.norm = linalg::op_norm(out.value);
  out.report.bound = std::exp(bound_exponent);
  out.report.satisfied = out.report.norm <= out.report.bound * (1.0 + 1e-12);
  return out;
}

convex::ConvexSetV momentum_set_of_measure(const SpectralMeasureDiscrete& P) {
  std::vector<Vec> pts;
  for (const auto& a : P.atoms()) {
    if (a.P.norm() > kZeroProjection) pts.push_back(a.alpha);
  }
  return convex::ConvexSetV(std::move(pts));
}

std::vector<CMat> generators_of_measure(const SpectralMeasureDiscrete& P) {
  const int n = P.group_dim();
  const int N = P.space_dim();
  std::vector<CMat> gens(static_cast<size_t>(n), CMat::Zero(N, N));
  for (const auto& a : P.atoms()) {
    for (int j = 0; j < n; ++j) gens[static_cast<size_t>(j)] += kI * a.alpha(j) * a.P;
  }
  return gens;
}

unirep::UnitaryRep rep_of_measure(const SpectralMeasureDiscrete& P) {
  return unirep::UnitaryRep(liealg::abelian(P.group_dim()), generators_of_measure(P), false,
                            "spectral-measure");
}

Recovery recover_measure(const std::vector<CMat>& generators, double tau_cluster) {
  if (generators.empty()) throw InputError("recover_measure: no generators");
  const auto N = generators.front().rows();
  for (size_t j = 0; j < generators.size(); ++j) {
    const auto& A = generators[j];
    if (A.rows() != N || A.cols() != N) throw InputError("recover_measure: generator shapes differ");
    if (linalg::skew_hermitian_residual(A) > 1e-10 * std::max(1.0, A.norm())) {
      throw InputError("recover_measure: generator " + std::to_string(j) + " is not skew-Hermitian");
    }
  }
  for (size_t i = 0; i < generators.size(); ++i) {
    for (size_t j = i + 1; j < generators.size(); ++j) {
      const double c = linalg::commutator(generators[i], generators[j]).norm();
      if (c > kCommuteTol) {
        std::ostringstream os;
        os << "recover_measure: generators " << i << " and " << j << " do not commute (|[A_" << i
           << ", A_" << j << "]| = " << c << ")";
        throw PreconditionError(os.str());
      }
    }
  }

  std::vector<ClusterEvent> events;
  std::vector<Leaf> leaves{{CMat::Identity(N, N)}};
  for (size_t j = 0; j < generators.size(); ++j) {
    const CMat H = -kI * generators[j];
    std::vector<Leaf> next;
    for (const auto& leaf : leaves) {
      const CMat M = leaf.basis.adjoint() * H * leaf.basis;
      const auto eig = linalg::hermitian_eigen(M);  // ascending
      const auto m = eig.values.size();
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= m; ++i) {
        if (i == m || eig.values(i) - eig.values(i - 1) > tau_cluster) {
          const Eigen::Index len = i - start;
          const double spread = eig.values(i - 1) - eig.values(start);
          if (len > 1 && spread > kClusterReport) {
            events.push_back({static_cast<int>(j), static_cast<int>(len), spread});
          }
          next.push_back({leaf.basis * eig.vectors.middleCols(start, len)});
          start = i;
        }
      }
    }
    leaves = std::move(next);
  }

  std::vector<Atom> atoms;
  atoms.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    Atom a;
    a.P = leaf.basis * leaf.basis.adjoint();
    a.alpha = Vec(static_cast<Eigen::Index>(generators.size()));
    const double rank = static_cast<double>(leaf.basis.cols());
    for (size_t j = 0; j < generators.size(); ++j) {
      const CMat H = -kI * generators[j];
      a.alpha(static_cast<Eigen::Index>(j)) = (leaf.basis.adjoint() * H * leaf.basis).trace().real() / rank;
    }
    atoms.push_back(std::move(a));
  }
  return Recovery{SpectralMeasureDiscrete(std::move(atoms)), std::move(events)};
}

SpectralMeasureDiscrete random_measure(int N, int n, int n_atoms, std::mt19937_64& rng, double lo,
                                       double hi, double min_separation) {
  if (N < 1 || n < 1 || n_atoms < 1 || n_atoms > N) {
    throw InputError("random_measure: need 1 <= n_atoms <= N and n >= 1");
  }
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Vec> alphas;
  for (int guard = 0; static_cast<int>(alphas.size()) < n_atoms; ++guard) {
    if (guard > 100000) throw InputError("random_measure: cannot place atoms with that separation");
    Vec a(n);
    for (int j = 0; j < n; ++j) a(j) = u(rng);
    const bool far = std::all_of(alphas.begin(), alphas.end(), [&](const Vec& b) {
      return (a - b).cwiseAbs().maxCoeff() >= min_separation;
    });
    if (far) alphas.push_back(std::move(a));
  }
  // Random ranks: one column each, the remaining columns assigned uniformly.
  std::vector<int> owner(static_cast<size_t>(N));
  std::iota(owner.begin(), owner.begin() + n_atoms, 0);
  std::uniform_int_distribution<int> pick(0, n_atoms - 1);
  for (int c = n_atoms; c < N; ++c) owner[static_cast<size_t>(c)] = pick(rng);
  const CMat U = linalg::random_unitary(N, rng);
  std::vector<Atom> atoms(static_cast<size_t>(n_atoms));
  for (int k = 0; k < n_atoms; ++k) {
    atoms[static_cast<size_t>(k)].alpha = alphas[static_cast<size_t>(k)];
    atoms[static_cast<size_t>(k)].P = CMat::Zero(N, N);
  }
  for (int c = 0; c < N; ++c) {
    auto& P = atoms[static_cast<size_t>(owner[static_cast<size_t>(c)])].P;
    P += U.col(c) * U.col(c).adjoint();
  }
  return SpectralMeasureDiscrete(std::move(atoms));
}

}  // namespace momentumlab::abelian
