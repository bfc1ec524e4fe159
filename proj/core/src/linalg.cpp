#include "momentumlab/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace momentumlab::linalg {

HermitianEigen hermitian_eigen(const CMat& H) {
  if (H.rows() != H.cols()) throw InputError("hermitian_eigen: matrix is not square");
  if (H.rows() == 0) return {Vec(), CMat()};
  const CMat Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(Hs);
  if (es.info() != Eigen::Success) throw ComputationError("hermitian_eigen: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double lambda_max(const CMat& H) {
  if (H.rows() != H.cols()) throw InputError("lambda_max: matrix is not square");
  const CMat Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(Hs, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ComputationError("lambda_max: solver failed");
  return es.eigenvalues().maxCoeff();
}

CMat expm_skew_hermitian(const CMat& A) {
  const cplx I(0.0, 1.0);
  const auto eig = hermitian_eigen(I * A);
  // A = -i H, so exp(A) = V exp(-i Lambda) V^*.
  CVec phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) phases(k) = std::exp(-I * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

RMat expm(const RMat& M) {
  if (M.rows() != M.cols()) throw InputError("expm: matrix is not square");
  const Eigen::Index n = M.rows();
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const RMat S = M / std::ldexp(1.0, squarings);
  // Taylor to degree 18 on ||S|| <= 1/2 is below double rounding.
  RMat term = RMat::Identity(n, n);
  RMat sum = RMat::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = term * S / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double op_norm(const CMat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(M);
  return svd.singularValues()(0);
}

CMat commutator(const CMat& A, const CMat& B) { return A * B - B * A; }

double skew_hermitian_residual(const CMat& A) { return op_norm(A + A.adjoint()); }

RMat null_space(const RMat& M, double tol) {
  const Eigen::Index n = M.cols();
  if (M.rows() == 0) return RMat::Identity(n, n);
  Eigen::JacobiSVD<RMat> svd(M, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double thr = tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

CVec complex_gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

CMat random_unitary(int n, std::mt19937_64& rng) {
  CMat Z(n, n);
  for (int j = 0; j < n; ++j) Z.col(j) = complex_gaussian(n, rng);
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ() * CMat::Identity(n, n);
  const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = R(j, j);
    const double a = std::abs(d);
    if (a > 0.0) Q.col(j) *= d / a;
  }
  return Q;
}

}  // namespace momentumlab::linalg
