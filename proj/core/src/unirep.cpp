#include "momentumlab/unirep.hpp"

#include <cmath>
#include <sstream>

#include "momentumlab/linalg.hpp"

namespace momentumlab::unirep {
namespace {

constexpr double kSkewTol = 1e-10;
constexpr double kHomTol = 1e-9;
const cplx kI(0.0, 1.0);

void check_coords(const UnitaryRep& rep, const Vec& x, const char* what) {
  if (x.size() != rep.dim()) {
    std::ostringstream os;
    os << what << ": expected " << rep.dim() << " coordinates, got " << x.size();
    throw InputError(os.str());
  }
}

// Fock-space annihilation operator on levels 0..N-1.
CMat annihilation(int levels) {
  CMat a = CMat::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace

UnitaryRep::UnitaryRep(liealg::LieAlgebraDesc algebra, std::vector<CMat> generators,
                       bool truncated, std::string label)
    : algebra_(std::move(algebra)), generators_(std::move(generators)), truncated_(truncated),
      label_(std::move(label)) {
  if (generators_.size() != static_cast<size_t>(algebra_.dim())) {
    throw InputError("UnitaryRep(" + label_ + "): one generator per basis element required");
  }
  const Eigen::Index n = generators_.front().rows();
  if (n < 1) throw InputError("UnitaryRep(" + label_ + "): empty Hilbert space");
  for (size_t i = 0; i < generators_.size(); ++i) {
    const auto& A = generators_[i];
    if (A.rows() != n || A.cols() != n) {
      throw InputError("UnitaryRep(" + label_ + "): generator shapes disagree");
    }
    if (linalg::skew_hermitian_residual(A) > kSkewTol * std::max(1.0, A.norm())) {
      throw InputError("UnitaryRep(" + label_ + "): generator " + std::to_string(i) +
                       " is not skew-Hermitian");
    }
  }
  if (!truncated_ && homomorphism_residual(*this) > kHomTol) {
    throw InputError("UnitaryRep(" + label_ + "): generators violate the bracket relations");
  }
}

CMat d_pi(const UnitaryRep& rep, const Vec& x) {
  check_coords(rep, x, "d_pi");
  const int n = rep.space_dim();
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < rep.dim(); ++i) {
    if (x(i) != 0.0) out += x(i) * rep.generators()[static_cast<size_t>(i)];
  }
  return out;
}

CMat pi_of_exp(const UnitaryRep& rep, const Vec& x) {
  return linalg::expm_skew_hermitian(d_pi(rep, x));
}

double homomorphism_residual(const UnitaryRep& rep) {
  const auto& A = rep.generators();
  const auto& L = rep.algebra();
  double worst = 0.0;
  for (int i = 0; i < rep.dim(); ++i) {
    for (int j = i + 1; j < rep.dim(); ++j) {
      CMat r = linalg::commutator(A[static_cast<size_t>(i)], A[static_cast<size_t>(j)]);
      for (int k = 0; k < rep.dim(); ++k) {
        const double c = L.c(i, j, k);
        if (c != 0.0) r -= c * A[static_cast<size_t>(k)];
      }
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

double spectral_sup(const UnitaryRep& rep, const Vec& x) {
  return linalg::lambda_max(kI * d_pi(rep, x));
}

CVec top_eigenvector(const UnitaryRep& rep, const Vec& x) {
  const auto eig = linalg::hermitian_eigen(kI * d_pi(rep, x));
  return eig.vectors.col(eig.vectors.cols() - 1);
}

double seminorm_constant(const UnitaryRep& rep) {
  double c = 0.0;
  for (const auto& A : rep.generators()) c += linalg::op_norm(A);
  return c;
}

RMat kernel_of_d_pi(const UnitaryRep& rep, double tol) {
  const Eigen::Index n2 = rep.generators().front().size();
  RMat M(2 * n2, rep.dim());
  for (int i = 0; i < rep.dim(); ++i) {
    const auto flat = rep.generators()[static_cast<size_t>(i)].reshaped();
    M.col(i).head(n2) = flat.real();
    M.col(i).tail(n2) = flat.imag();
  }
  return linalg::null_space(M, tol);
}

UnitaryRep su2_spin(int two_j) {
  if (two_j < 0) throw InputError("su2_spin: spin must be nonnegative");
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  CMat Jp = CMat::Zero(n, n);
  CMat Jz = CMat::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const double m = j - r;
    Jz(r, r) = m;
    if (r > 0) {
      // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> is row r-1.
      Jp(r - 1, r) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const CMat Jm = Jp.adjoint();
  const CMat Jx = 0.5 * (Jp + Jm);
  const CMat Jy = (Jp - Jm) / (2.0 * kI);
  std::ostringstream label;
  label << "su2-spin-" << (two_j % 2 == 0 ? std::to_string(two_j / 2) : std::to_string(two_j) + "/2");
  return UnitaryRep(liealg::su2(), {-kI * Jx, -kI * Jy, -kI * Jz}, false, label.str());
}

UnitaryRep oscillator_truncated(int levels) {
  if (levels < 2) throw InputError("oscillator_truncated: need at least 2 levels");
  const CMat a = annihilation(levels);
  const CMat ad = a.adjoint();
  const CMat Q = (a + ad) / std::sqrt(2.0);
  const CMat P = (a - ad) / (kI * std::sqrt(2.0));
  CMat N = CMat::Zero(levels, levels);
  for (int k = 0; k < levels; ++k) N(k, k) = k;
  const CMat Id = CMat::Identity(levels, levels);
  return UnitaryRep(liealg::oscillator(), {kI * P, kI * Q, kI * Id, -kI * N}, true,
                    "oscillator-N" + std::to_string(levels));
}

UnitaryRep heisenberg_truncated(int levels) {
  if (levels < 2) throw InputError("heisenberg_truncated: need at least 2 levels");
  const CMat a = annihilation(levels);
  const CMat ad = a.adjoint();
  const CMat Q = (a + ad) / std::sqrt(2.0);
  const CMat P = (a - ad) / (kI * std::sqrt(2.0));
  const CMat Id = CMat::Identity(levels, levels);
  return UnitaryRep(liealg::heisenberg(), {kI * P, kI * Q, kI * Id}, true,
                    "heisenberg-N" + std::to_string(levels));
}

UnitaryRep abelian_diagonal(const std::vector<Vec>& weights) {
  if (weights.empty()) throw InputError("abelian_diagonal: no weights");
  const int d = static_cast<int>(weights.front().size());
  const int n = static_cast<int>(weights.size());
  std::vector<CMat> gens(static_cast<size_t>(d), CMat::Zero(n, n));
  for (int k = 0; k < n; ++k) {
    if (weights[static_cast<size_t>(k)].size() != d) {
      throw InputError("abelian_diagonal: weight dimensions disagree");
    }
    for (int j = 0; j < d; ++j) gens[static_cast<size_t>(j)](k, k) = kI * weights[static_cast<size_t>(k)](j);
  }
  return UnitaryRep(liealg::abelian(d), std::move(gens), false, "abelian-diagonal");
}

UnitaryRep zero_rep(const liealg::LieAlgebraDesc& algebra, int space_dim) {
  std::vector<CMat> gens(static_cast<size_t>(algebra.dim()), CMat::Zero(space_dim, space_dim));
  return UnitaryRep(algebra, std::move(gens), false, "zero");
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  if (a.algebra().structure_constants() != b.algebra().structure_constants()) {
    throw InputError("direct_sum: representations of different algebras");
  }
  const int na = a.space_dim();
  const int nb = b.space_dim();
  std::vector<CMat> gens;
  for (int i = 0; i < a.dim(); ++i) {
    CMat g = CMat::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = a.generators()[static_cast<size_t>(i)];
    g.bottomRightCorner(nb, nb) = b.generators()[static_cast<size_t>(i)];
    gens.push_back(std::move(g));
  }
  return UnitaryRep(a.algebra(), std::move(gens), a.truncated() || b.truncated(),
                    a.label() + "+" + b.label());
}

}  // namespace momentumlab::unirep
