#pragma once

#include <string>
#include <vector>

#include "momentumlab/liealg.hpp"
#include "momentumlab/types.hpp"

// Finite-dimensional unitary representations, given by the derived
// representation on a basis: A_i = d pi(x_i), skew-Hermitian N x N.
//
// Inner products are linear in the first argument and conjugate-linear in
// the second: <u, v> = sum u_k conj(v_k) = v^* u. Every vector is smooth in
// finite dimension, so the smooth-vector space is the whole space.
//
// Truncations of infinite-dimensional representations (Fock-space cutoffs)
// carry truncated() == true; their bracket compatibility is reported by
// homomorphism_residual() but never asserted.
namespace momentumlab::unirep {

class UnitaryRep {
 public:
  UnitaryRep(liealg::LieAlgebraDesc algebra, std::vector<CMat> generators, bool truncated,
             std::string label);

  [[nodiscard]] const liealg::LieAlgebraDesc& algebra() const { return algebra_; }
  [[nodiscard]] const std::vector<CMat>& generators() const { return generators_; }
  [[nodiscard]] bool truncated() const { return truncated_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] int dim() const { return algebra_.dim(); }
  [[nodiscard]] int space_dim() const { return static_cast<int>(generators_.front().rows()); }

 private:
  liealg::LieAlgebraDesc algebra_;
  std::vector<CMat> generators_;
  bool truncated_ = false;
  std::string label_;
};

/// d pi(x) = sum x_i A_i.
CMat d_pi(const UnitaryRep& rep, const Vec& x);

/// pi(exp x) = exp(d pi(x)), unitary.
CMat pi_of_exp(const UnitaryRep& rep, const Vec& x);

/// max_{i,j} || [A_i, A_j] - sum_k c_ij^k A_k ||  (Frobenius).
double homomorphism_residual(const UnitaryRep& rep);

/// sup Spec(i d pi(x)), the support value s_pi(x) of the momentum set.
double spectral_sup(const UnitaryRep& rep, const Vec& x);

/// Top eigenvector of i d pi(x) (unit norm).
CVec top_eigenvector(const UnitaryRep& rep, const Vec& x);

/// Equicontinuity constant C = sum_i ||A_i|| with ||d pi(x)|| <= C max|x_i|.
double seminorm_constant(const UnitaryRep& rep);

/// Orthonormal basis (columns) of ker(d pi) in algebra coordinates.
RMat kernel_of_d_pi(const UnitaryRep& rep, double tol = 1e-9);

// Catalogue.

/// su(2) spin j (two_j = 2j), weight basis m = j, j-1, ..., -j, A_k = -i J_k.
UnitaryRep su2_spin(int two_j);

/// Oscillator algebra (p, q, z, h) on Fock levels 0..N-1:
/// A_p = iP, A_q = iQ, A_z = i, A_h = -i N. Flagged truncated.
UnitaryRep oscillator_truncated(int levels);

/// Schroedinger pair of h_3 (p, q, z) on Fock levels 0..N-1. Flagged truncated.
UnitaryRep heisenberg_truncated(int levels);

/// Abelian R^n acting diagonally: A_j = i diag(alpha_k(e_j)) over weights alpha_k.
UnitaryRep abelian_diagonal(const std::vector<Vec>& weights);

/// All generators zero.
UnitaryRep zero_rep(const liealg::LieAlgebraDesc& algebra, int space_dim);

/// Block-diagonal direct sum (algebras must agree).
UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);

}  // namespace momentumlab::unirep
