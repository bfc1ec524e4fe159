#pragma once

#include <random>

#include "momentumlab/types.hpp"

// Dense linear-algebra helpers shared by the representation modules.
namespace momentumlab::linalg {

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
struct HermitianEigen {
  Vec values;
  CMat vectors;
};

HermitianEigen hermitian_eigen(const CMat& H);

/// Largest eigenvalue of a Hermitian matrix.
double lambda_max(const CMat& H);

/// exp(A) for skew-Hermitian A through the eigendecomposition of iA.
CMat expm_skew_hermitian(const CMat& A);

/// exp(M) for a general real square matrix (scaling and squaring).
RMat expm(const RMat& M);

/// Spectral norm (largest singular value).
double op_norm(const CMat& M);

CMat commutator(const CMat& A, const CMat& B);

/// Deviation from skew-Hermitian symmetry, ||A + A^*||.
double skew_hermitian_residual(const CMat& A);

/// Orthonormal basis (columns) of the null space of M, with singular values
/// below tol * max(1, sigma_max) treated as zero.
RMat null_space(const RMat& M, double tol);

/// Complex vector with iid standard complex Gaussian entries.
CVec complex_gaussian(int n, std::mt19937_64& rng);

/// Haar-distributed unitary via QR with phase correction.
CMat random_unitary(int n, std::mt19937_64& rng);

}  // namespace momentumlab::linalg
