#include "momentumlab/momentum.hpp"

#include <cmath>
#include <numbers>

#include "momentumlab/linalg.hpp"
#include "momentumlab/parallel.hpp"

namespace momentumlab::momentum {
namespace {

const cplx kI(0.0, 1.0);

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::vector<Vec> ternary_probes(int d) {
  std::vector<Vec> out;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    Vec v(d);
    int c = code;
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      v(i) = static_cast<double>(c % 3) - 1.0;
      nonzero = nonzero || v(i) != 0.0;
      c /= 3;
    }
    if (nonzero) out.push_back(v);
  }
  return out;
}

}  // namespace

ProjectiveVector::ProjectiveVector(CVec v) : v_(std::move(v)) {
  if (v_.size() == 0 || !(v_.norm() > 0.0)) throw InputError("ProjectiveVector: zero vector");
}

std::string to_string(BoundednessVerdict::Kind kind) {
  switch (kind) {
    case BoundednessVerdict::Kind::bounded:
      return "bounded";
    case BoundednessVerdict::Kind::semibounded:
      return "semibounded";
    case BoundednessVerdict::Kind::unbounded_directionwise:
      return "unbounded-directionwise";
  }
  return "unknown";
}

Vec momentum_map(const unirep::UnitaryRep& rep, const ProjectiveVector& pv) {
  const CVec& v = pv.vec();
  if (v.size() != rep.space_dim()) throw InputError("momentum_map: vector dimension mismatch");
  const double nrm2 = v.squaredNorm();
  Vec phi(rep.dim());
  for (int j = 0; j < rep.dim(); ++j) {
    // <A v, v> = v^* A v, purely imaginary for skew-Hermitian A.
    const cplx num = v.dot(rep.generators()[static_cast<size_t>(j)] * v);
    phi(j) = (num / (kI * nrm2)).real();
  }
  return phi;
}

std::vector<Vec> default_directions(int d, int count, std::uint64_t seed) {
  if (d < 1) throw InputError("default_directions: dimension must be >= 1");
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    dirs.push_back(Vec::Unit(d, i));
    dirs.push_back(-Vec::Unit(d, i));
  }
  if (d == 1 || count <= 0) return dirs;
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.5) / count;
      Vec v(2);
      v << std::cos(t), std::sin(t);
      dirs.push_back(v);
    }
  } else if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      Vec v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      dirs.push_back(v);
    }
  } else {
    auto rng = parallel::stream_rng(seed, 0xd1ec7u);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v(i) = g(rng);
      dirs.push_back(v / v.norm());
    }
  }
  return dirs;
}

MomentumSetEstimate momentum_set_estimate(const unirep::UnitaryRep& rep, int n_samples,
                                          const std::vector<Vec>& directions, std::uint64_t seed,
                                          bool inject_top_eigenvectors) {
  if (n_samples < 1) throw InputError("momentum_set_estimate: n_samples must be >= 1");
  if (directions.empty()) throw InputError("momentum_set_estimate: directions must be nonempty");
  for (const auto& x : directions) {
    if (x.size() != rep.dim()) throw InputError("momentum_set_estimate: direction dimension mismatch");
  }
  const auto ns = static_cast<size_t>(n_samples);
  const size_t nd = directions.size();
  const size_t total = ns + (inject_top_eigenvectors ? nd : 0);
  std::vector<Vec> values(total);
  std::vector<double> outer(nd);
  parallel::parallel_for(total + nd, [&](size_t i) {
    if (i < ns) {
      auto rng = parallel::stream_rng(seed, i);
      values[i] = momentum_map(rep, ProjectiveVector(linalg::complex_gaussian(rep.space_dim(), rng)));
      return;
    }
    if (i < total) {
      const auto k = i - ns;
      values[i] = momentum_map(rep, ProjectiveVector(unirep::top_eigenvector(rep, directions[k])));
      return;
    }
    const auto k = i - total;
    outer[k] = unirep::spectral_sup(rep, directions[k]);
  });

  MomentumSetEstimate est{convex::ConvexSetV(std::move(values)), {}, 0.0, n_samples,
                          inject_top_eigenvectors};
  est.gap = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < nd; ++k) {
    SupportRow row{directions[k], -est.inner.min_point_pairing(directions[k]), outer[k]};
    est.gap = std::max(est.gap, row.gap());
    est.table.push_back(std::move(row));
  }
  return est;
}

EquivarianceResult equivariance_residual(const unirep::UnitaryRep& rep, const Vec& y,
                                         const ProjectiveVector& v) {
  const CMat g = unirep::pi_of_exp(rep, y);
  const Vec lhs = momentum_map(rep, ProjectiveVector(g * v.vec()));
  const RMat Ad = liealg::adjoint_of_exp(y, rep.algebra());
  const Vec rhs = liealg::coadjoint(Ad, momentum_map(rep, v));
  EquivarianceResult res{(lhs - rhs).norm(), std::nullopt};
  if (rep.truncated()) {
    res.warning = "representation '" + rep.label() +
                  "' is truncated; the residual includes truncation error";
  }
  return res;
}

BoundednessVerdict classify_boundedness(const unirep::UnitaryRep& rep) {
  BoundednessVerdict out;
  out.kind = BoundednessVerdict::Kind::bounded;
  out.equicontinuity_constant = unirep::seminorm_constant(rep);
  for (int i = 0; i < rep.dim(); ++i) {
    for (double sgn : {1.0, -1.0}) {
      const Vec x = sgn * Vec::Unit(rep.dim(), i);
      if (!std::isfinite(unirep::spectral_sup(rep, x))) {
        throw ComputationError("classify_boundedness: non-finite support value");
      }
    }
  }
  out.interior_point = Vec::Zero(rep.dim());
  return out;
}

BoundednessVerdict classify_boundedness(const std::vector<unirep::UnitaryRep>& family,
                                        const GrowthOptions& options) {
  if (family.size() < 3) {
    throw InputError("classify_boundedness: a truncation family needs at least 3 levels");
  }
  const int d = family.front().dim();
  std::vector<int> levels;
  for (const auto& rep : family) {
    if (rep.dim() != d) throw InputError("classify_boundedness: algebras differ across the family");
    if (!levels.empty() && rep.space_dim() <= levels.back()) {
      throw InputError("classify_boundedness: truncation levels must increase");
    }
    levels.push_back(rep.space_dim());
  }
  std::vector<Vec> probes;
  if (d <= 4) {
    probes = ternary_probes(d);
  } else {
    for (int i = 0; i < d; ++i) {
      probes.push_back(Vec::Unit(d, i));
      probes.push_back(-Vec::Unit(d, i));
    }
  }

  BoundednessVerdict out;
  out.growth.resize(probes.size());
  parallel::parallel_for(probes.size(), [&](size_t p) {
    DirectionGrowth g;
    g.direction = probes[p];
    g.levels = levels;
    std::vector<double> logn, logs, nd;
    for (size_t k = 0; k < family.size(); ++k) {
      const double s = unirep::spectral_sup(family[k], probes[p]);
      g.sup_values.push_back(s);
      logn.push_back(std::log(static_cast<double>(levels[k])));
      logs.push_back(std::log1p(std::abs(s)));
      nd.push_back(static_cast<double>(levels[k]));
    }
    g.loglog_slope = ls_slope(logn, logs);
    g.linear_slope = ls_slope(nd, g.sup_values);
    g.increase = g.sup_values.back() - g.sup_values.front();
    g.bounded = g.loglog_slope < options.max_loglog_slope && g.increase < options.tau_growth;
    out.growth[p] = std::move(g);
  });

  std::vector<Vec> bounded_dirs;
  std::vector<Vec> unbounded_dirs;
  for (const auto& g : out.growth) (g.bounded ? bounded_dirs : unbounded_dirs).push_back(g.direction);

  if (unbounded_dirs.empty()) {
    out.kind = BoundednessVerdict::Kind::bounded;
    out.interior_point = Vec::Zero(d);
    return out;
  }
  if (!bounded_dirs.empty()) {
    // B(I_pi) ~ cone(bounded directions) = B(X) for X with rays W*.
    const auto dual = convex::dual_cone(bounded_dirs);
    const convex::ConvexSetV outer({Vec::Zero(d)}, dual.rays());
    const auto cert = convex::semi_equicontinuity_certificate(outer);
    if (cert.verdict) {
      out.kind = BoundednessVerdict::Kind::semibounded;
      out.witnesses = bounded_dirs;
      out.interior_point = cert.interior_point;
      return out;
    }
  }
  out.kind = BoundednessVerdict::Kind::unbounded_directionwise;
  out.witnesses = unbounded_dirs;
  return out;
}

RMat annihilator(const convex::ConvexSetV& X, double tol) {
  RMat M(static_cast<Eigen::Index>(X.points().size()), X.dim());
  for (size_t i = 0; i < X.points().size(); ++i) M.row(static_cast<Eigen::Index>(i)) = X.points()[i].transpose();
  return linalg::null_space(M, tol);
}

}  // namespace momentumlab::momentum
