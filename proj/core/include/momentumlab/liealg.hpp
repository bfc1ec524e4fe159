#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "momentumlab/types.hpp"

// Finite-dimensional real Lie algebras given by structure constants
// [x_i, x_j] = sum_k c_ij^k x_k, with an optional complex matrix realisation,
// and the Poisson algebra of trigonometric polynomials on the 2-torus.
//
// Conventions: su(2) uses [e_i, e_j] = eps_ijk e_k with matrix basis
// e_k = -(i/2) sigma_k. Ad(exp y) = exp(ad_y) acts on coordinates; the
// coadjoint action is Ad*(g) alpha = alpha o Ad(g)^{-1}, i.e. Ad(g)^{-T} alpha.
namespace momentumlab::liealg {

class LieAlgebraDesc {
 public:
  /// c[i][j][k] = c_ij^k. Validates antisymmetry, Jacobi (<= 1e-10) and, when
  /// given, bracket compatibility of the matrix basis (<= 1e-10).
  LieAlgebraDesc(std::string label, int dim, std::vector<double> structure_constants,
                 std::optional<std::vector<CMat>> matrix_basis = std::nullopt);

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double c(int i, int j, int k) const {
    return c_[static_cast<size_t>((i * dim_ + j) * dim_ + k)];
  }
  [[nodiscard]] const std::vector<double>& structure_constants() const { return c_; }
  [[nodiscard]] const std::optional<std::vector<CMat>>& matrix_basis() const {
    return basis_;
  }

  /// ad_y as a d x d matrix: column j holds [y, x_j].
  [[nodiscard]] RMat ad(const Vec& y) const;

  [[nodiscard]] double jacobi_residual() const;
  [[nodiscard]] double matrix_bracket_residual() const;

 private:
  std::string label_;
  int dim_ = 0;
  std::vector<double> c_;
  std::optional<std::vector<CMat>> basis_;
};

// Shipped algebras.
LieAlgebraDesc su2();
/// Heisenberg algebra h_3 with basis (p, q, z) and [p, q] = z.
LieAlgebraDesc heisenberg();
/// Oscillator algebra with basis (p, q, z, h): [p,q] = z, [h,p] = q, [h,q] = -p.
LieAlgebraDesc oscillator();
LieAlgebraDesc abelian(int n);

Vec bracket(const Vec& a, const Vec& b, const LieAlgebraDesc& L);

/// Ad(exp y) in basis coordinates. With a matrix basis the result is
/// cross-checked against conjugation g X_i g^{-1}; disagreement above 1e-8 or
/// a conjugate that does not expand in the basis raises ComputationError.
RMat adjoint_of_exp(const Vec& y, const LieAlgebraDesc& L);

/// alpha o Ad^{-1}. Throws InputError for a singular matrix.
Vec coadjoint(const RMat& ad_matrix, const Vec& alpha);

/// Finite Fourier series f(x,y) = sum a_{m,n} e^{i(mx+ny)} on T^2,
/// frequencies bounded by kMaxFrequency per axis.
class TrigPolynomial {
 public:
  static constexpr int kMaxFrequency = 128;
  using Key = std::pair<int, int>;

  TrigPolynomial() = default;

  void add(int m, int n, cplx a);
  [[nodiscard]] cplx coefficient(int m, int n) const;
  [[nodiscard]] const std::map<Key, cplx>& coefficients() const { return coeffs_; }
  [[nodiscard]] bool is_real(double tol = 1e-14) const;
  [[nodiscard]] cplx evaluate(double x, double y) const;
  /// f(x + s, y + t).
  [[nodiscard]] TrigPolynomial translated(double s, double t) const;

  static TrigPolynomial constant(double c);
  static TrigPolynomial cos_x(int n);  // cos(n x)
  static TrigPolynomial cos_y(int n);
  static TrigPolynomial sin_x(int n);
  static TrigPolynomial sin_y(int n);

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(double s, const TrigPolynomial& a);
  /// Pointwise product (coefficient convolution).
  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);

 private:
  std::map<Key, cplx> coeffs_;
};

/// {f, g} = f_x g_y - f_y g_x, computed exactly on coefficients.
TrigPolynomial poisson_bracket_torus(const TrigPolynomial& f, const TrigPolynomial& g);

/// (f, g) = integral over T^2 of f g dx dy = (2 pi)^2 sum a_{m,n} conj(b_{m,n}).
/// Both inputs must be real-valued.
double l2_inner_torus(const TrigPolynomial& f, const TrigPolynomial& g);

}  // namespace momentumlab::liealg
