#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "momentumlab/convex.hpp"
#include "momentumlab/momentum.hpp"
#include "momentumlab/unirep.hpp"

// Reproducing-kernel Hilbert spaces of holomorphic functions on open subsets
// M of C^d with kernels invariant under a right action of a real Lie group.
//
// The span of kernel sections K_z (z in a finite point set) is the
// computational stand-in for the dense subspace H_K^0; its inner product is
// the Gram form <K_w, K_z> = K(z, w). For a kernel section K_m with
// K(m, m) > 0 the momentum value along x is
//
//   Phi([K_m])(x) = (1/i) (d/dt K(m.exp(tx), m))|_{t=0} / K(m, m).
namespace momentumlab::rkhs {

using Point = CVec;

struct KernelSpec {
  int domain_dim = 1;
  std::function<cplx(const Point&, const Point&)> eval;
  std::function<bool(const Point&)> in_domain;  // open subset M of C^d
  std::string label;
};

/// Right action of a real Lie group on M with its one-parameter flows.
struct GroupActionOnM {
  int group_dim = 1;    // coordinates of group elements
  int algebra_dim = 1;  // coordinates of algebra directions
  std::function<Point(const Point&, const Vec&)> act;
  std::function<Vec(const Vec&, const Vec&)> compose;  // (g, h) -> g h
  std::function<Point(const Point&, const Vec&, double)> flow;
  /// m.exp(s x) for Im s >= 0; empty when no half-plane extension exists.
  std::function<Point(const Point&, const Vec&, cplx)> complex_flow;
  /// Generators of the declared cone of directions admitting the extension.
  std::vector<Vec> extension_cone;
  std::string label;
};

struct GramResult {
  CMat gram;
  double min_eigenvalue = 0.0;
  bool psd = false;
};

class FiniteModel {
 public:
  FiniteModel(KernelSpec kernel, std::vector<Point> points);

  [[nodiscard]] const KernelSpec& kernel() const { return kernel_; }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  [[nodiscard]] const CMat& gram() const { return gram_; }
  [[nodiscard]] double min_eigenvalue() const { return min_eig_; }
  /// Index of z among the model points (tolerance 1e-12), if present.
  [[nodiscard]] std::optional<size_t> find(const Point& z) const;

 private:
  KernelSpec kernel_;
  std::vector<Point> points_;
  CMat gram_;
  double min_eig_ = 0.0;
};

struct ContractionResult {
  double lhs_norm = 0.0;   // || pi_hat_x(ib) || on span{K_z}
  double rhs_bound = 0.0;  // exp(b sup <Phi(Omega), -x>)
  double sup_value = 0.0;  // sup over the model points of <Phi, -x>
  bool verdict = false;
};

struct KernelMomentumSet {
  convex::ConvexSetV inner;
  std::vector<momentum::SupportRow> table;  // outer = NaN when no oracle
  double gap = 0.0;
  int used_points = 0;
  int skipped_points = 0;  // samples with K(m, m) <= 0
};

using PointSampler = std::function<Point(std::mt19937_64&, std::size_t)>;

// Kernels and actions.

/// K(z, w) = exp(sum z_k conj(w_k)) on C^d.
KernelSpec fock_kernel(int d);
/// Szegoe kernel K(z, w) = 1 / (1 - z conj(w)) on the unit disc.
KernelSpec hardy_kernel();
/// Torus T^d acting by (m.theta)_k = exp(-i theta_k) m_k; the half-plane
/// extension is declared on the cone generated by -e_k (contractions).
GroupActionOnM torus_rotation(int d);
/// R^d acting by real translations m.a = m + a (no half-plane extension).
GroupActionOnM real_translation(int d);

/// Samples |m_k| <= R: index 0 is the origin, indices 1..2^d-1 are corner
/// points with |m_k| in {0, R}, the rest uniform in the polydisc.
PointSampler polydisc_sampler(int d, double radius);

// Operations.

GramResult gram_matrix(const KernelSpec& kernel, const std::vector<Point>& points);

/// |<f, K_z>_Gram - f(z)| for f = sum c_i K_{z_i}; z must be a model point.
double reproducing_check(const FiniteModel& model, const CVec& coefficients, const Point& z);

/// max |K(z.g, w.g) - K(z, w)| over the samples.
double invariance_residual(const KernelSpec& kernel, const GroupActionOnM& action,
                           const std::vector<Vec>& group_samples,
                           const std::vector<Point>& point_samples);

/// max |act(act(m, g), h) - act(m, g h)| over the samples.
double action_law_residual(const GroupActionOnM& action, const std::vector<Vec>& group_samples,
                           const std::vector<Point>& point_samples);

/// Phi([K_m])(x) by a fourth-order central difference of t -> K(m.exp(tx), m)
/// (step 1e-4) with a Richardson consistency check against step 5e-5.
double kernel_momentum_value(const KernelSpec& kernel, const GroupActionOnM& action,
                             const Vec& x, const Point& m);

/// Phi([K_m]) in all algebra coordinates.
Vec kernel_momentum(const KernelSpec& kernel, const GroupActionOnM& action, const Point& m);

/// Whether z -> z.(ib) is a contraction (holomorphic Jacobian norm <= 1) on
/// the sample points for b in {0.25, 1}.
bool verify_extension(const GroupActionOnM& action, const Vec& x,
                      const std::vector<Point>& samples);

/// Inner hull of Phi([K_m]) over sampled points of Omega = {K(m,m) > 0};
/// outer support values from `oracle` (a truncated matrix model) if given.
KernelMomentumSet kernel_momentum_set(const KernelSpec& kernel, const GroupActionOnM& action,
                                      const std::vector<Vec>& directions,
                                      const PointSampler& sampler, int n_points,
                                      std::uint64_t seed,
                                      const unirep::UnitaryRep* oracle = nullptr);

/// Norm of T(K_{z_i}) = K_{images_i} on span{K_{z_i}} in the Gram inner product.
double gram_operator_norm(const FiniteModel& model, const std::vector<Point>& images);

/// || pi_hat_x(ib) || on the model span against exp(b sup <Phi(Omega), -x>).
ContractionResult contraction_check(const GroupActionOnM& action, const Vec& x, double b,
                                    const FiniteModel& model);

/// || pi_hat(ib1) pi_hat(ib2) - pi_hat(i(b1 + b2)) || on the model span.
double semigroup_residual(const GroupActionOnM& action, const Vec& x, double b1, double b2,
                          const FiniteModel& model);

// Truncated monomial-basis oracle for the Fock space with torus rotation.

/// Generators A_k = -i N_k on the tensor basis z^n / sqrt(n!) (levels per
/// variable). Flagged truncated.
unirep::UnitaryRep fock_rotation_oracle(int d, int levels);

/// Coefficients of K_m in that basis: prod_k conj(m_k)^{n_k} / sqrt(n_k!).
CVec fock_section_coefficients(const Point& m, int levels);

}  // namespace momentumlab::rkhs
