#include "momentumlab/liealg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/QR>

#include "momentumlab/linalg.hpp"

namespace momentumlab::liealg {
namespace {

constexpr double kStructureTol = 1e-10;

CMat expm_complex(const CMat& M) {
  const Eigen::Index n = M.rows();
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMat S = M / std::ldexp(1.0, squarings);
  CMat term = CMat::Identity(n, n);
  CMat sum = CMat::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = term * S / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Real least-squares expansion of a complex matrix in a complex basis.
RMat basis_expansion_matrix(const std::vector<CMat>& basis) {
  const Eigen::Index n2 = basis.front().size();
  RMat B(2 * n2, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    const auto flat = basis[i].reshaped();
    B.col(static_cast<Eigen::Index>(i)).head(n2) = flat.real();
    B.col(static_cast<Eigen::Index>(i)).tail(n2) = flat.imag();
  }
  return B;
}

std::map<TrigPolynomial::Key, cplx> bracket_terms(const TrigPolynomial& f,
                                                  const TrigPolynomial& g) {
  std::map<TrigPolynomial::Key, cplx> out;
  for (const auto& [kf, a] : f.coefficients()) {
    for (const auto& [kg, b] : g.coefficients()) {
      // d/dx -> i m, d/dy -> i n:  (i m1)(i n2) - (i n1)(i m2) = -(m1 n2 - n1 m2)
      const double cross = static_cast<double>(kf.first * kg.second - kf.second * kg.first);
      if (cross == 0.0) continue;
      out[{kf.first + kg.first, kf.second + kg.second}] += -cross * (a * b);
    }
  }
  return out;
}

}  // namespace

LieAlgebraDesc::LieAlgebraDesc(std::string label, int dim, std::vector<double> structure_constants,
                               std::optional<std::vector<CMat>> matrix_basis)
    : label_(std::move(label)), dim_(dim), c_(std::move(structure_constants)),
      basis_(std::move(matrix_basis)) {
  if (dim_ < 1) throw InputError("LieAlgebraDesc: dimension must be >= 1");
  if (c_.size() != static_cast<size_t>(dim_ * dim_ * dim_)) {
    throw InputError("LieAlgebraDesc: expected d^3 structure constants");
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        if (std::abs(c(i, j, k) + c(j, i, k)) > kStructureTol) {
          std::ostringstream os;
          os << "LieAlgebraDesc(" << label_ << "): structure constants not antisymmetric at (" << i
             << "," << j << "," << k << ")";
          throw InputError(os.str());
        }
      }
    }
  }
  if (jacobi_residual() > kStructureTol) {
    throw InputError("LieAlgebraDesc(" + label_ + "): Jacobi identity fails");
  }
  if (basis_) {
    if (basis_->size() != static_cast<size_t>(dim_)) {
      throw InputError("LieAlgebraDesc: matrix basis must have d elements");
    }
    const Eigen::Index n = basis_->front().rows();
    for (const auto& X : *basis_) {
      if (X.rows() != n || X.cols() != n) throw InputError("LieAlgebraDesc: basis shape mismatch");
    }
    if (matrix_bracket_residual() > kStructureTol) {
      throw InputError("LieAlgebraDesc(" + label_ + "): matrix basis violates the brackets");
    }
  }
}

RMat LieAlgebraDesc::ad(const Vec& y) const {
  if (y.size() != dim_) throw InputError("ad: dimension mismatch");
  RMat m = RMat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (y(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) m(k, j) += y(i) * c(i, j, k);
    }
  }
  return m;
}

double LieAlgebraDesc::jacobi_residual() const {
  // sum_l (c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m) = 0
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) {
          double s = 0.0;
          for (int l = 0; l < dim_; ++l) {
            s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double LieAlgebraDesc::matrix_bracket_residual() const {
  if (!basis_) return 0.0;
  const auto& X = *basis_;
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      CMat r = X[static_cast<size_t>(i)] * X[static_cast<size_t>(j)] -
               X[static_cast<size_t>(j)] * X[static_cast<size_t>(i)];
      for (int k = 0; k < dim_; ++k) r -= c(i, j, k) * X[static_cast<size_t>(k)];
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

LieAlgebraDesc su2() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) { c[static_cast<size_t>((i * 3 + j) * 3 + k)] = v; };
  set(0, 1, 2, 1.0);
  set(1, 2, 0, 1.0);
  set(2, 0, 1, 1.0);
  set(1, 0, 2, -1.0);
  set(2, 1, 0, -1.0);
  set(0, 2, 1, -1.0);
  const cplx I(0.0, 1.0);
  CMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  std::vector<CMat> basis{-0.5 * I * s1, -0.5 * I * s2, -0.5 * I * s3};
  return LieAlgebraDesc("su2", 3, std::move(c), std::move(basis));
}

LieAlgebraDesc heisenberg() {
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;   // [p, q] = z
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  CMat P = CMat::Zero(3, 3), Q = CMat::Zero(3, 3), Z = CMat::Zero(3, 3);
  P(0, 1) = 1.0;
  Q(1, 2) = 1.0;
  Z(0, 2) = 1.0;
  return LieAlgebraDesc("heisenberg", 3, std::move(c), std::vector<CMat>{P, Q, Z});
}

LieAlgebraDesc oscillator() {
  // basis order (p, q, z, h)
  std::vector<double> c(64, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    c[static_cast<size_t>((i * 4 + j) * 4 + k)] = v;
    c[static_cast<size_t>((j * 4 + i) * 4 + k)] = -v;
  };
  set(0, 1, 2, 1.0);   // [p, q] = z
  set(3, 0, 1, 1.0);   // [h, p] = q
  set(3, 1, 0, -1.0);  // [h, q] = -p
  return LieAlgebraDesc("oscillator", 4, std::move(c));
}

LieAlgebraDesc abelian(int n) {
  if (n < 1) throw InputError("abelian: dimension must be >= 1");
  return LieAlgebraDesc("abelian" + std::to_string(n), n,
                        std::vector<double>(static_cast<size_t>(n * n * n), 0.0));
}

Vec bracket(const Vec& a, const Vec& b, const LieAlgebraDesc& L) {
  if (a.size() != L.dim() || b.size() != L.dim()) throw InputError("bracket: dimension mismatch");
  return L.ad(a) * b;
}

RMat adjoint_of_exp(const Vec& y, const LieAlgebraDesc& L) {
  const RMat Ad = linalg::expm(L.ad(y));
  if (!L.matrix_basis()) return Ad;

  const auto& X = *L.matrix_basis();
  const Eigen::Index n = X.front().rows();
  CMat Y = CMat::Zero(n, n);
  for (int i = 0; i < L.dim(); ++i) Y += y(i) * X[static_cast<size_t>(i)];
  const CMat g = expm_complex(Y);
  const CMat ginv = expm_complex(-Y);
  const RMat B = basis_expansion_matrix(X);
  const auto qr = B.colPivHouseholderQr();
  if (qr.rank() < L.dim()) throw ComputationError("adjoint_of_exp: matrix basis is degenerate");
  const Eigen::Index n2 = n * n;
  for (int j = 0; j < L.dim(); ++j) {
    const CMat conj = g * X[static_cast<size_t>(j)] * ginv;
    Vec rhs(2 * n2);
    rhs.head(n2) = conj.reshaped().real();
    rhs.tail(n2) = conj.reshaped().imag();
    const Vec coef = qr.solve(rhs);
    if ((B * coef - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) {
      throw ComputationError("adjoint_of_exp: conjugate does not expand in the basis");
    }
    if ((coef - Ad.col(j)).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, coef.norm())) {
      throw ComputationError("adjoint_of_exp: exp(ad y) disagrees with matrix conjugation");
    }
  }
  return Ad;
}

Vec coadjoint(const RMat& ad_matrix, const Vec& alpha) {
  if (ad_matrix.rows() != ad_matrix.cols() || ad_matrix.rows() != alpha.size()) {
    throw InputError("coadjoint: dimension mismatch");
  }
  Eigen::FullPivLU<RMat> lu(ad_matrix);
  if (!lu.isInvertible()) throw InputError("coadjoint: Ad matrix is singular");
  // (alpha o Ad^{-1})_j = sum_i alpha_i (Ad^{-1})_{ij}
  return lu.inverse().transpose() * alpha;
}

void TrigPolynomial::add(int m, int n, cplx a) {
  if (std::abs(m) > kMaxFrequency || std::abs(n) > kMaxFrequency) {
    throw CapabilityError("TrigPolynomial: frequency exceeds the truncation bound 128");
  }
  if (a == cplx(0.0, 0.0)) return;
  auto& slot = coeffs_[{m, n}];
  slot += a;
  if (slot == cplx(0.0, 0.0)) coeffs_.erase({m, n});
}

cplx TrigPolynomial::coefficient(int m, int n) const {
  const auto it = coeffs_.find({m, n});
  return it == coeffs_.end() ? cplx(0.0, 0.0) : it->second;
}

bool TrigPolynomial::is_real(double tol) const {
  for (const auto& [k, a] : coeffs_) {
    if (std::abs(coefficient(-k.first, -k.second) - std::conj(a)) > tol * std::max(1.0, std::abs(a))) {
      return false;
    }
  }
  return true;
}

cplx TrigPolynomial::evaluate(double x, double y) const {
  cplx s(0.0, 0.0);
  for (const auto& [k, a] : coeffs_) s += a * std::polar(1.0, k.first * x + k.second * y);
  return s;
}

TrigPolynomial TrigPolynomial::translated(double s, double t) const {
  TrigPolynomial out;
  for (const auto& [k, a] : coeffs_) out.coeffs_[k] = a * std::polar(1.0, k.first * s + k.second * t);
  return out;
}

TrigPolynomial TrigPolynomial::constant(double c) {
  TrigPolynomial f;
  f.add(0, 0, c);
  return f;
}

TrigPolynomial TrigPolynomial::cos_x(int n) {
  TrigPolynomial f;
  if (n == 0) return constant(1.0);
  f.add(n, 0, 0.5);
  f.add(-n, 0, 0.5);
  return f;
}

TrigPolynomial TrigPolynomial::cos_y(int n) {
  TrigPolynomial f;
  if (n == 0) return constant(1.0);
  f.add(0, n, 0.5);
  f.add(0, -n, 0.5);
  return f;
}

TrigPolynomial TrigPolynomial::sin_x(int n) {
  TrigPolynomial f;
  f.add(n, 0, cplx(0.0, -0.5));
  f.add(-n, 0, cplx(0.0, 0.5));
  return f;
}

TrigPolynomial TrigPolynomial::sin_y(int n) {
  TrigPolynomial f;
  f.add(0, n, cplx(0.0, -0.5));
  f.add(0, -n, cplx(0.0, 0.5));
  return f;
}

TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
  TrigPolynomial out = a;
  for (const auto& [k, v] : b.coeffs_) out.add(k.first, k.second, v);
  return out;
}

TrigPolynomial operator*(double s, const TrigPolynomial& a) {
  TrigPolynomial out;
  for (const auto& [k, v] : a.coeffs_) out.add(k.first, k.second, s * v);
  return out;
}

TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b) {
  TrigPolynomial out;
  for (const auto& [ka, va] : a.coeffs_) {
    for (const auto& [kb, vb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, va * vb);
  }
  return out;
}

TrigPolynomial poisson_bracket_torus(const TrigPolynomial& f, const TrigPolynomial& g) {
  // Antisymmetrised accumulation: identical code paths for (f,g) and (g,f)
  // make {f,f} = 0 and {f,g} = -{g,f} hold bit-exactly.
  const auto fg = bracket_terms(f, g);
  const auto gf = bracket_terms(g, f);
  std::map<TrigPolynomial::Key, cplx> diff;
  for (const auto& [k, v] : fg) diff[k] += 0.5 * v;
  for (const auto& [k, v] : gf) diff[k] -= 0.5 * v;
  TrigPolynomial out;
  for (const auto& [k, v] : diff) out.add(k.first, k.second, v);
  return out;
}

double l2_inner_torus(const TrigPolynomial& f, const TrigPolynomial& g) {
  if (!f.is_real() || !g.is_real()) throw InputError("l2_inner_torus: inputs must be real-valued");
  cplx s(0.0, 0.0);
  for (const auto& [k, a] : f.coefficients()) s += a * std::conj(g.coefficient(k.first, k.second));
  return 4.0 * std::numbers::pi * std::numbers::pi * s.real();
}

}  // namespace momentumlab::liealg
