#include "momentumlab/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "momentumlab/linalg.hpp"
#include "momentumlab/parallel.hpp"

namespace momentumlab::rkhs {
namespace {

const cplx kI(0.0, 1.0);
constexpr double kDistinctTol = 1e-12;
constexpr double kPsdTol = -1e-9;
constexpr double kGramFloor = 1e-8;

std::string describe(const Point& z) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    if (k) os << ", ";
    os << z(k).real() << (z(k).imag() < 0 ? "-" : "+") << std::abs(z(k).imag()) << "i";
  }
  os << ")";
  return os.str();
}

void require_in_domain(const KernelSpec& kernel, const Point& z, const char* what) {
  if (kernel.in_domain && !kernel.in_domain(z)) {
    throw DomainError(std::string(what) + ": point " + describe(z) + " leaves the domain of kernel '" +
                      kernel.label + "'");
  }
}

double lambda_max_generalized(const CMat& A, const CMat& B) {
  const CMat As = 0.5 * (A + A.adjoint());
  const CMat Bs = 0.5 * (B + B.adjoint());
  Eigen::GeneralizedSelfAdjointEigenSolver<CMat> es(As, Bs, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ComputationError("gram_operator_norm: generalized eigensolver failed");
  }
  return es.eigenvalues().maxCoeff();
}

void require_conditioned(const FiniteModel& model) {
  if (model.min_eigenvalue() < kGramFloor) {
    std::ostringstream os;
    os << "Gram matrix is ill-conditioned (min eigenvalue " << model.min_eigenvalue()
       << " < 1e-8); use fewer or better-spread points";
    throw ComputationError(os.str());
  }
}

bool in_extension_cone(const GroupActionOnM& action, const Vec& x) {
  if (!action.complex_flow || action.extension_cone.empty()) return false;
  if (x.isZero(0.0)) return true;
  const convex::ConvexSetV cone({Vec::Zero(x.size())}, action.extension_cone);
  return convex::contains(cone, x);
}

double factorial_sqrt_inv(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r /= std::sqrt(static_cast<double>(k));
  return r;
}

}  // namespace

FiniteModel::FiniteModel(KernelSpec kernel, std::vector<Point> points)
    : kernel_(std::move(kernel)), points_(std::move(points)) {
  const auto g = gram_matrix(kernel_, points_);
  if (!g.psd) {
    std::ostringstream os;
    os << "FiniteModel: Gram matrix of kernel '" << kernel_.label
       << "' is not positive semidefinite (min eigenvalue " << g.min_eigenvalue << ")";
    throw InputError(os.str());
  }
  gram_ = g.gram;
  min_eig_ = g.min_eigenvalue;
}

std::optional<size_t> FiniteModel::find(const Point& z) const {
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() == z.size() && (points_[i] - z).cwiseAbs().maxCoeff() <= kDistinctTol) {
      return i;
    }
  }
  return std::nullopt;
}

KernelSpec fock_kernel(int d) {
  if (d < 1) throw InputError("fock_kernel: dimension must be >= 1");
  KernelSpec k;
  k.domain_dim = d;
  k.label = "fock" + std::to_string(d);
  k.eval = [](const Point& z, const Point& w) { return std::exp(w.dot(z)); };  // sum z conj(w)
  k.in_domain = [d](const Point& z) { return z.size() == d && z.allFinite(); };
  return k;
}

KernelSpec hardy_kernel() {
  KernelSpec k;
  k.domain_dim = 1;
  k.label = "hardy";
  k.eval = [](const Point& z, const Point& w) { return 1.0 / (1.0 - z(0) * std::conj(w(0))); };
  k.in_domain = [](const Point& z) { return z.size() == 1 && std::abs(z(0)) < 1.0; };
  return k;
}

GroupActionOnM torus_rotation(int d) {
  GroupActionOnM a;
  a.group_dim = d;
  a.algebra_dim = d;
  a.label = "torus-rotation" + std::to_string(d);
  a.act = [](const Point& m, const Vec& theta) {
    Point out(m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) out(k) = std::exp(-kI * theta(k)) * m(k);
    return out;
  };
  a.compose = [](const Vec& g, const Vec& h) -> Vec { return g + h; };
  a.flow = [](const Point& m, const Vec& x, double t) {
    Point out(m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) out(k) = std::exp(-kI * t * x(k)) * m(k);
    return out;
  };
  a.complex_flow = [](const Point& m, const Vec& x, cplx s) {
    Point out(m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) out(k) = std::exp(-kI * s * x(k)) * m(k);
    return out;
  };
  for (int k = 0; k < d; ++k) a.extension_cone.push_back(-Vec::Unit(d, k));
  return a;
}

GroupActionOnM real_translation(int d) {
  GroupActionOnM a;
  a.group_dim = d;
  a.algebra_dim = d;
  a.label = "real-translation" + std::to_string(d);
  a.act = [](const Point& m, const Vec& g) -> Point { return m + g.cast<cplx>(); };
  a.compose = [](const Vec& g, const Vec& h) -> Vec { return g + h; };
  a.flow = [](const Point& m, const Vec& x, double t) -> Point { return m + (t * x).cast<cplx>(); };
  return a;
}

PointSampler polydisc_sampler(int d, double radius) {
  return [d, radius](std::mt19937_64& rng, std::size_t index) {
    Point m = Point::Zero(d);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t corners = std::size_t{1} << d;
    if (index < corners) {
      for (int k = 0; k < d; ++k) {
        if ((index >> k) & 1U) m(k) = std::polar(radius, 2.0 * std::numbers::pi * u(rng));
      }
      return m;
    }
    for (int k = 0; k < d; ++k) {
      const double r = radius * std::sqrt(u(rng));
      m(k) = std::polar(r, 2.0 * std::numbers::pi * u(rng));
    }
    return m;
  };
}

GramResult gram_matrix(const KernelSpec& kernel, const std::vector<Point>& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != kernel.domain_dim) throw InputError("gram_matrix: point dimension mismatch");
    require_in_domain(kernel, points[i], "gram_matrix");
    for (size_t j = 0; j < i; ++j) {
      if ((points[i] - points[j]).cwiseAbs().maxCoeff() <= kDistinctTol) {
        throw InputError("gram_matrix: duplicate points " + std::to_string(j) + " and " +
                         std::to_string(i));
      }
    }
  }
  GramResult out;
  out.gram = CMat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.gram(i, j) = kernel.eval(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
    }
  }
  out.min_eigenvalue = n > 0 ? linalg::hermitian_eigen(out.gram).values.minCoeff() : 0.0;
  out.psd = out.min_eigenvalue >= kPsdTol;
  return out;
}

double reproducing_check(const FiniteModel& model, const CVec& coefficients, const Point& z) {
  const auto idx = model.find(z);
  if (!idx) throw PreconditionError("reproducing_check: z is not a model point");
  if (coefficients.size() != static_cast<Eigen::Index>(model.points().size())) {
    throw InputError("reproducing_check: one coefficient per model point required");
  }
  // <f, K_z> in the Gram form: sum_i c_i <K_{z_i}, K_z> = sum_i c_i G(z, z_i).
  const cplx via_gram = (model.gram().row(static_cast<Eigen::Index>(*idx)) * coefficients)(0);
  cplx direct(0.0, 0.0);
  for (size_t i = 0; i < model.points().size(); ++i) {
    direct += coefficients(static_cast<Eigen::Index>(i)) * model.kernel().eval(z, model.points()[i]);
  }
  return std::abs(via_gram - direct);
}

double invariance_residual(const KernelSpec& kernel, const GroupActionOnM& action,
                           const std::vector<Vec>& group_samples,
                           const std::vector<Point>& point_samples) {
  double worst = 0.0;
  for (const auto& g : group_samples) {
    std::vector<Point> moved;
    moved.reserve(point_samples.size());
    for (const auto& z : point_samples) {
      Point zg = action.act(z, g);
      require_in_domain(kernel, zg, "invariance_residual");
      moved.push_back(std::move(zg));
    }
    for (size_t i = 0; i < point_samples.size(); ++i) {
      for (size_t j = 0; j < point_samples.size(); ++j) {
        worst = std::max(worst, std::abs(kernel.eval(moved[i], moved[j]) -
                                         kernel.eval(point_samples[i], point_samples[j])));
      }
    }
  }
  return worst;
}

double action_law_residual(const GroupActionOnM& action, const std::vector<Vec>& group_samples,
                           const std::vector<Point>& point_samples) {
  double worst = 0.0;
  for (const auto& g : group_samples) {
    for (const auto& h : group_samples) {
      for (const auto& m : point_samples) {
        const Point lhs = action.act(action.act(m, g), h);
        const Point rhs = action.act(m, action.compose(g, h));
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double kernel_momentum_value(const KernelSpec& kernel, const GroupActionOnM& action,
                             const Vec& x, const Point& m) {
  if (x.size() != action.algebra_dim) throw InputError("kernel_momentum_value: direction dimension mismatch");
  require_in_domain(kernel, m, "kernel_momentum_value");
  const cplx kmm = kernel.eval(m, m);
  if (!(kmm.real() > 0.0)) {
    throw PreconditionError("kernel_momentum_value: K(m, m) <= 0, point " + describe(m) +
                            " is outside Omega");
  }
  if (x.isZero(0.0)) return 0.0;
  auto F = [&](double t) {
    const Point mt = action.flow(m, x, t);
    require_in_domain(kernel, mt, "kernel_momentum_value");
    return kernel.eval(mt, m);
  };
  auto central4 = [&](double h) {
    return (-F(2 * h) + 8.0 * F(h) - 8.0 * F(-h) + F(-2 * h)) / (12.0 * h);
  };
  const cplx d1 = central4(1e-4);
  const cplx d2 = central4(5e-5);
  const double scale = std::max(std::abs(kmm), std::abs(d1));
  if (std::abs(d1 - d2) > 1e-7 * scale) {
    throw ComputationError("kernel_momentum_value: Richardson check failed at " + describe(m));
  }
  const cplx phi = d1 / (kI * kmm);
  if (std::abs(phi.imag()) > 1e-6 * std::max(1.0, std::abs(phi.real()))) {
    throw ComputationError("kernel_momentum_value: momentum value is not real at " + describe(m) +
                           " (kernel not invariant under the flow?)");
  }
  return phi.real();
}

Vec kernel_momentum(const KernelSpec& kernel, const GroupActionOnM& action, const Point& m) {
  Vec phi(action.algebra_dim);
  for (int j = 0; j < action.algebra_dim; ++j) {
    phi(j) = kernel_momentum_value(kernel, action, Vec::Unit(action.algebra_dim, j), m);
  }
  return phi;
}

bool verify_extension(const GroupActionOnM& action, const Vec& x, const std::vector<Point>& samples) {
  if (!action.complex_flow) return false;
  constexpr double h = 1e-6;
  for (const auto& m : samples) {
    const Eigen::Index d = m.size();
    for (double b : {0.25, 1.0}) {
      const cplx s(0.0, b);
      CMat J(d, d);
      for (Eigen::Index l = 0; l < d; ++l) {
        Point mp = m, mm = m;
        mp(l) += h;
        mm(l) -= h;
        J.col(l) = (action.complex_flow(mp, x, s) - action.complex_flow(mm, x, s)) / (2.0 * h);
      }
      if (linalg::op_norm(J) > 1.0 + 1e-6) return false;
    }
  }
  return true;
}

KernelMomentumSet kernel_momentum_set(const KernelSpec& kernel, const GroupActionOnM& action,
                                      const std::vector<Vec>& directions,
                                      const PointSampler& sampler, int n_points,
                                      std::uint64_t seed, const unirep::UnitaryRep* oracle) {
  if (n_points < 1) throw InputError("kernel_momentum_set: n_points must be >= 1");
  if (directions.empty()) throw InputError("kernel_momentum_set: no directions");
  const auto n = static_cast<size_t>(n_points);
  std::vector<Point> pts(n);
  for (size_t i = 0; i < n; ++i) {
    auto rng = parallel::stream_rng(seed, i);
    pts[i] = sampler(rng, i);
  }

  // Spot-verify the declared half-plane extension on the first samples.
  const std::vector<Point> probe(pts.begin(), pts.begin() + static_cast<long>(std::min<size_t>(n, 8)));
  for (const auto& gen : action.extension_cone) {
    if (!verify_extension(action, gen, probe)) {
      throw PreconditionError("kernel_momentum_set: declared half-plane extension fails for action '" +
                              action.label + "'");
    }
  }

  std::vector<std::optional<Vec>> vals(n);
  parallel::parallel_for(n, [&](size_t i) {
    const Point& m = pts[i];
    if (kernel.in_domain && !kernel.in_domain(m)) return;
    if (!(kernel.eval(m, m).real() > 0.0)) return;
    vals[i] = kernel_momentum(kernel, action, m);
  });
  std::vector<Vec> inner;
  int skipped = 0;
  for (auto& v : vals) {
    if (v) {
      inner.push_back(std::move(*v));
    } else {
      ++skipped;
    }
  }
  if (inner.empty()) throw ComputationError("kernel_momentum_set: sampler produced no points of Omega");

  KernelMomentumSet out{convex::ConvexSetV(std::move(inner)), {}, 0.0, 0, skipped};
  out.used_points = n_points - skipped;
  out.gap = oracle ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  for (const auto& x : directions) {
    momentum::SupportRow row{x, -out.inner.min_point_pairing(x), std::numeric_limits<double>::quiet_NaN()};
    if (oracle) {
      row.outer = unirep::spectral_sup(*oracle, x);
      out.gap = std::max(out.gap, row.gap());
    }
    out.table.push_back(std::move(row));
  }
  return out;
}

double gram_operator_norm(const FiniteModel& model, const std::vector<Point>& images) {
  const auto n = static_cast<Eigen::Index>(model.points().size());
  if (static_cast<Eigen::Index>(images.size()) != n) throw InputError("gram_operator_norm: one image per point");
  require_conditioned(model);
  CMat M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      M(i, j) = model.kernel().eval(images[static_cast<size_t>(i)], images[static_cast<size_t>(j)]);
    }
  }
  return std::sqrt(std::max(0.0, lambda_max_generalized(M, model.gram())));
}

ContractionResult contraction_check(const GroupActionOnM& action, const Vec& x, double b,
                                    const FiniteModel& model) {
  if (!(b >= 0.0)) throw InputError("contraction_check: b must be >= 0");
  if (!action.complex_flow) {
    throw PreconditionError("contraction_check: action '" + action.label + "' has no complex flow");
  }
  if (!in_extension_cone(action, x)) {
    throw PreconditionError("contraction_check: direction is outside the declared extension cone");
  }
  require_conditioned(model);
  const auto& kernel = model.kernel();
  // pi_hat_x(s) K_m = K_{m.s*} with s* = -conj(s); for s = ib, s* = ib.
  const cplx s_star(0.0, b);
  std::vector<Point> images;
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& z : model.points()) {
    Point w = action.complex_flow(z, x, s_star);
    require_in_domain(kernel, w, "contraction_check");
    images.push_back(std::move(w));
    if (kernel.eval(z, z).real() > 0.0) {
      sup = std::max(sup, -kernel_momentum(kernel, action, z).dot(x));
    }
  }
  ContractionResult out;
  out.lhs_norm = gram_operator_norm(model, images);
  out.sup_value = sup;
  out.rhs_bound = std::exp(b * sup);
  out.verdict = out.lhs_norm <= out.rhs_bound * (1.0 + 1e-6);
  return out;
}

double semigroup_residual(const GroupActionOnM& action, const Vec& x, double b1, double b2,
                          const FiniteModel& model) {
  if (!action.complex_flow || !in_extension_cone(action, x)) {
    throw PreconditionError("semigroup_residual: direction is outside the declared extension cone");
  }
  require_conditioned(model);
  const auto& K = model.kernel().eval;
  const auto n = static_cast<Eigen::Index>(model.points().size());
  // pi_hat(ib1) pi_hat(ib2) K_z = K_{(z.ib2).ib1}; compare with K_{z.i(b1+b2)}.
  std::vector<Point> u, v;
  for (const auto& z : model.points()) {
    u.push_back(action.complex_flow(action.complex_flow(z, x, cplx(0.0, b2)), x, cplx(0.0, b1)));
    v.push_back(action.complex_flow(z, x, cplx(0.0, b1 + b2)));
  }
  CMat M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto si = static_cast<size_t>(i);
      const auto sj = static_cast<size_t>(j);
      M(i, j) = K(u[si], u[sj]) - K(u[si], v[sj]) - K(v[si], u[sj]) + K(v[si], v[sj]);
    }
  }
  return std::sqrt(std::max(0.0, lambda_max_generalized(M, model.gram())));
}

unirep::UnitaryRep fock_rotation_oracle(int d, int levels) {
  if (d < 1 || levels < 2) throw InputError("fock_rotation_oracle: invalid size");
  int total = 1;
  for (int k = 0; k < d; ++k) total *= levels;
  std::vector<CMat> gens(static_cast<size_t>(d), CMat::Zero(total, total));
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    for (int k = 0; k < d; ++k) {
      gens[static_cast<size_t>(k)](idx, idx) = -kI * static_cast<double>(rest % levels);
      rest /= levels;
    }
  }
  return unirep::UnitaryRep(liealg::abelian(d), std::move(gens), true,
                            "fock-rotation-oracle-N" + std::to_string(levels));
}

CVec fock_section_coefficients(const Point& m, int levels) {
  const Eigen::Index d = m.size();
  int total = 1;
  for (Eigen::Index k = 0; k < d; ++k) total *= levels;
  CVec c(total);
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    cplx v(1.0, 0.0);
    for (Eigen::Index k = 0; k < d; ++k) {
      const int nk = rest % levels;
      rest /= levels;
      v *= std::pow(std::conj(m(k)), nk) * factorial_sqrt_inv(nk);
    }
    c(idx) = v;
  }
  return c;
}

}  // namespace momentumlab::rkhs
