#include "momentumlab/convex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "momentumlab/lp.hpp"

namespace momentumlab::convex {
namespace {

constexpr double kDedupTol = 1e-12;

void check_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw InputError(std::string(what) + ": non-finite entry");
}

void check_dim(const ConvexSetV& X, const Vec& v, const char* what) {
  if (v.size() != X.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (set has " << X.dim() << ", vector has " << v.size()
       << ")";
    throw InputError(os.str());
  }
}

// Lexicographic sort followed by a windowed scan on the first coordinate.
std::vector<Vec> dedup(std::vector<Vec> pts) {
  if (pts.size() < 2) return pts;
  std::vector<size_t> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::lexicographical_compare(pts[a].data(), pts[a].data() + pts[a].size(),
                                        pts[b].data(), pts[b].data() + pts[b].size());
  });
  std::vector<size_t> kept;
  for (size_t idx : order) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (pts[idx](0) - pts[*it](0) > kDedupTol) break;
      if ((pts[idx] - pts[*it]).cwiseAbs().maxCoeff() <= kDedupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(idx);
  }
  // Preserve first-occurrence order so certificates stay index-stable.
  std::sort(kept.begin(), kept.end());
  std::vector<Vec> out;
  out.reserve(kept.size());
  for (size_t idx : kept) out.push_back(std::move(pts[idx]));
  return out;
}

double ray_scale(const Vec& v) { return std::max(1.0, v.norm()); }

// Dynamic bitset over processed constraint indices.
struct ZeroSet {
  std::vector<std::uint64_t> words;

  explicit ZeroSet(size_t nbits = 0) : words((nbits + 63) / 64, 0) {}
  void set(size_t i) { words[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  [[nodiscard]] ZeroSet intersect(const ZeroSet& o) const {
    ZeroSet r;
    r.words.resize(words.size());
    for (size_t k = 0; k < words.size(); ++k) r.words[k] = words[k] & o.words[k];
    return r;
  }
  [[nodiscard]] bool contains(const ZeroSet& sub) const {
    for (size_t k = 0; k < words.size(); ++k) {
      if ((sub.words[k] & ~words[k]) != 0) return false;
    }
    return true;
  }
  [[nodiscard]] int count() const {
    int c = 0;
    for (auto w : words) c += __builtin_popcountll(w);
    return c;
  }
};

struct DdRay {
  Vec dir;
  ZeroSet zeros;
};

}  // namespace

double ExtendedReal::value() const {
  if (infinite_) throw InputError("ExtendedReal::value: value is +infinity");
  return value_;
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
  if (a.infinite_ || b.infinite_) return ExtendedReal::infinity();
  return ExtendedReal(a.value_ + b.value_);
}

bool operator==(ExtendedReal a, ExtendedReal b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(ExtendedReal a, ExtendedReal b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string ExtendedReal::to_string() const {
  if (infinite_) return "+inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

ConvexSetV::ConvexSetV(std::vector<Vec> points, std::vector<Vec> rays) {
  if (points.empty()) throw InputError("ConvexSetV: at least one point is required");
  dim_ = static_cast<int>(points.front().size());
  if (dim_ < 1) throw InputError("ConvexSetV: dimension must be >= 1");
  for (const auto& p : points) {
    if (p.size() != dim_) throw InputError("ConvexSetV: point dimensions disagree");
    check_finite(p, "ConvexSetV point");
  }
  for (auto& r : rays) {
    if (r.size() != dim_) throw InputError("ConvexSetV: ray dimensions disagree");
    check_finite(r, "ConvexSetV ray");
    const double n = r.norm();
    if (!(n > 0.0)) throw InputError("ConvexSetV: zero ray");
    r /= n;
  }
  points_ = dedup(std::move(points));
  rays_ = dedup(std::move(rays));
}

double ConvexSetV::min_point_pairing(const Vec& v) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : points_) m = std::min(m, p.dot(v));
  return m;
}

ExtendedReal support_function(const ConvexSetV& X, const Vec& v, const Tolerances& tol) {
  check_dim(X, v, "support_function");
  if (!domain_membership(X, v, tol)) return ExtendedReal::infinity();
  return ExtendedReal(-X.min_point_pairing(v));
}

bool domain_membership(const ConvexSetV& X, const Vec& v, const Tolerances& tol) {
  check_dim(X, v, "domain_membership");
  const double thr = -tol.cone * ray_scale(v);
  return std::all_of(X.rays().begin(), X.rays().end(),
                     [&](const Vec& r) { return r.dot(v) >= thr; });
}

bool domain_interior(const ConvexSetV& X, const Vec& v, const Tolerances& tol) {
  check_dim(X, v, "domain_interior");
  const double thr = tol.cone * ray_scale(v);
  return std::all_of(X.rays().begin(), X.rays().end(),
                     [&](const Vec& r) { return r.dot(v) >= thr; });
}

HullDistance hull_distance(const ConvexSetV& X, const Vec& alpha) {
  check_dim(X, alpha, "hull_distance");
  const int d = X.dim();
  const int np = static_cast<int>(X.points().size());
  const int nr = static_cast<int>(X.rays().size());
  const int n = np + nr + 2 * d;
  RMat A = RMat::Zero(d + 1, n);
  Vec b(d + 1);
  Vec c = Vec::Zero(n);
  for (int i = 0; i < np; ++i) {
    A.col(i).head(d) = X.points()[static_cast<size_t>(i)];
    A(d, i) = 1.0;
  }
  for (int j = 0; j < nr; ++j) A.col(np + j).head(d) = X.rays()[static_cast<size_t>(j)];
  A.block(0, np + nr, d, d) = RMat::Identity(d, d);
  A.block(0, np + nr + d, d, d) = -RMat::Identity(d, d);
  c.tail(2 * d).setOnes();
  b.head(d) = alpha;
  b(d) = 1.0;

  const auto res = lp::solve_standard(A, b, c);
  if (res.status != lp::Status::optimal) {
    throw ComputationError("hull_distance: LP did not reach an optimum");
  }
  HullDistance out;
  out.distance = std::max(0.0, res.objective);
  out.separator = -res.duals.head(d);
  out.offset = res.duals(d);
  out.nearest = Vec::Zero(d);
  for (int i = 0; i < np; ++i) out.nearest += res.x(i) * X.points()[static_cast<size_t>(i)];
  for (int j = 0; j < nr; ++j) out.nearest += res.x(np + j) * X.rays()[static_cast<size_t>(j)];
  return out;
}

bool contains(const ConvexSetV& X, const Vec& alpha, const Tolerances& tol) {
  return hull_distance(X, alpha).distance <= tol.mem;
}

SemiEquicontinuityCertificate semi_equicontinuity_certificate(const ConvexSetV& X,
                                                              const Tolerances& tol) {
  SemiEquicontinuityCertificate cert;
  const int d = X.dim();
  if (X.rays().empty()) {
    cert.verdict = true;
    cert.interior_point = Vec::Zero(d);
    cert.margin = std::numeric_limits<double>::infinity();
    return cert;
  }
  // cone(rays) is pointed iff 0 is not in conv(rays); the l1-distance LP
  // gives either a strictly positive functional or a vanishing combination.
  const ConvexSetV ray_hull(X.rays());
  const auto hd = hull_distance(ray_hull, Vec::Zero(d));
  if (hd.distance > tol.cone) {
    Vec v = hd.separator;
    v /= v.norm();
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& r : X.rays()) margin = std::min(margin, r.dot(v));
    if (margin >= tol.cone) {
      cert.verdict = true;
      cert.interior_point = v;
      cert.margin = margin;
      return cert;
    }
  }
  // Recover lambda >= 0, sum = 1, sum lambda_i r_i = 0 and report the first
  // ray carrying weight: -lambda_j r_j lies in the cone, so +-r_j does too.
  const int nr = static_cast<int>(X.rays().size());
  RMat A(d + 1, nr);
  for (int j = 0; j < nr; ++j) {
    A.col(j).head(d) = X.rays()[static_cast<size_t>(j)];
    A(d, j) = 1.0;
  }
  Vec b = Vec::Zero(d + 1);
  b(d) = 1.0;
  const auto res = lp::solve_standard(A, b, Vec::Zero(nr), 1e-7);
  cert.verdict = false;
  if (res.status == lp::Status::optimal) {
    for (int j = 0; j < nr; ++j) {
      if (res.x(j) > 1e-12) {
        cert.line_direction = X.rays()[static_cast<size_t>(j)];
        break;
      }
    }
  }
  if (!cert.line_direction) cert.line_direction = X.rays().front();
  return cert;
}

ConvexSetV dual_cone(const std::vector<Vec>& W_rays) {
  if (W_rays.empty()) throw InputError("dual_cone: need the ambient dimension (empty ray list)");
  const int d = static_cast<int>(W_rays.front().size());
  if (d < 1) throw InputError("dual_cone: dimension must be >= 1");
  if (d > 16) throw CapabilityError("dual_cone: dimension > 16 is not supported");
  if (W_rays.size() > 10000) throw CapabilityError("dual_cone: more than 10^4 rays");
  std::vector<Vec> cons;
  for (const auto& w : W_rays) {
    if (w.size() != d) throw InputError("dual_cone: ray dimensions disagree");
    check_finite(w, "dual_cone");
    const double n = w.norm();
    if (n > 0.0) cons.push_back(w / n);
  }
  const size_t m = cons.size();
  constexpr double eps = 1e-10;

  std::vector<Vec> lineality;
  for (int i = 0; i < d; ++i) lineality.push_back(Vec::Unit(d, i));
  std::vector<DdRay> rays;

  for (size_t k = 0; k < m; ++k) {
    const Vec& a = cons[k];
    // Lineality direction not annihilated by a: it becomes a ray.
    int piv = -1;
    double best = eps;
    for (size_t i = 0; i < lineality.size(); ++i) {
      const double val = std::abs(a.dot(lineality[i]));
      if (val > best) {
        best = val;
        piv = static_cast<int>(i);
      }
    }
    if (piv >= 0) {
      Vec p = lineality[static_cast<size_t>(piv)];
      if (a.dot(p) < 0) p = -p;
      const double ap = a.dot(p);
      std::vector<Vec> next_lin;
      for (size_t i = 0; i < lineality.size(); ++i) {
        if (static_cast<int>(i) == piv) continue;
        Vec l = lineality[i] - (a.dot(lineality[i]) / ap) * p;
        next_lin.push_back(l / l.norm());
      }
      lineality = std::move(next_lin);
      for (auto& r : rays) {
        r.dir -= (a.dot(r.dir) / ap) * p;
        r.dir /= r.dir.norm();
        r.zeros.set(k);
      }
      ZeroSet z(m);
      for (size_t j = 0; j < k; ++j) z.set(j);
      rays.push_back({p / p.norm(), std::move(z)});
      continue;
    }

    std::vector<size_t> pos, zer, neg;
    std::vector<double> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = a.dot(rays[i].dir);
      if (val[i] > eps) {
        pos.push_back(i);
      } else if (val[i] < -eps) {
        neg.push_back(i);
      } else {
        zer.push_back(i);
      }
    }
    if (neg.empty()) {
      for (size_t i : zer) rays[i].zeros.set(k);
      continue;
    }
    const int pointed_dim = d - static_cast<int>(lineality.size());
    std::vector<DdRay> next;
    for (size_t i : pos) next.push_back(rays[i]);
    for (size_t i : zer) {
      next.push_back(rays[i]);
      next.back().zeros.set(k);
    }
    for (size_t ip : pos) {
      for (size_t in : neg) {
        const ZeroSet common = rays[ip].zeros.intersect(rays[in].zeros);
        if (common.count() < pointed_dim - 2) continue;
        bool adjacent = true;
        for (size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == ip || o == in) continue;
          if (rays[o].zeros.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec nd = val[ip] * rays[in].dir - val[in] * rays[ip].dir;
        const double nn = nd.norm();
        if (!(nn > 0.0)) continue;
        ZeroSet z = common;
        z.set(k);
        next.push_back({nd / nn, std::move(z)});
      }
    }
    rays = std::move(next);
  }

  std::vector<Vec> gens;
  for (const auto& l : lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  for (const auto& r : rays) gens.push_back(r.dir);
  return ConvexSetV({Vec::Zero(d)}, std::move(gens));
}

MembershipVerdict membership_reconstruct(const Vec& alpha, const SupportOracle& s_oracle,
                                         const std::vector<Vec>& directions,
                                         const ConvexSetV* explicit_set,
                                         const Tolerances& tol) {
  if (directions.empty()) throw InputError("membership_reconstruct: empty direction list");
  for (const auto& v : directions) {
    if (v.size() != alpha.size()) throw InputError("membership_reconstruct: dimension mismatch");
  }
  if (explicit_set != nullptr) {
    check_dim(*explicit_set, alpha, "membership_reconstruct");
    for (size_t i = 0; i < directions.size(); ++i) {
      if (!domain_interior(*explicit_set, directions[i], tol)) {
        throw PreconditionError("membership_reconstruct: direction " + std::to_string(i) +
                                " is not in the interior of B(X)");
      }
    }
  }

  MembershipVerdict out;
  for (const auto& v : directions) {
    const ExtendedReal s = s_oracle(v);
    if (s.is_infinite()) continue;
    const double viol = -s.value() - alpha.dot(v);
    if (viol > tol.mem) {
      out.kind = MembershipVerdict::Kind::outside;
      out.separator = v;
      out.violation = viol;
      return out;
    }
  }
  if (explicit_set == nullptr) {
    out.kind = MembershipVerdict::Kind::undetermined;
    return out;
  }

  const auto hd = hull_distance(*explicit_set, alpha);
  if (hd.distance <= tol.mem) {
    out.kind = MembershipVerdict::Kind::inside;
    return out;
  }
  Vec v = hd.separator;
  if (!explicit_set->rays().empty()) {
    const auto cert = semi_equicontinuity_certificate(*explicit_set, tol);
    if (cert.verdict) {
      const Vec& u = *cert.interior_point;
      const double su = -explicit_set->min_point_pairing(u);
      const double delta = 0.5 * hd.distance / (1.0 + std::abs(alpha.dot(u)) + std::abs(su));
      v += delta * u;
    }
  }
  out.kind = MembershipVerdict::Kind::outside;
  out.separator = v;
  const ExtendedReal s = support_function(*explicit_set, v, tol);
  out.violation = s.is_finite() ? -s.value() - alpha.dot(v) : hd.distance;
  return out;
}

bool properness_check(const ConvexSetV& X, const Vec& v, double c, const Tolerances& tol) {
  check_dim(X, v, "properness_check");
  if (!domain_membership(X, v, tol)) {
    throw PreconditionError("properness_check: v is not in B(X)");
  }
  const int d = X.dim();
  const int np = static_cast<int>(X.points().size());
  const int nr = static_cast<int>(X.rays().size());
  // Variables: lambda (np), mu (nr), slack (1).
  // Rows: sum lambda <p, v> + sum mu <r, v> + slack = c ;  sum lambda = 1.
  const int n = np + nr + 1;
  RMat A = RMat::Zero(2, n);
  for (int i = 0; i < np; ++i) {
    A(0, i) = X.points()[static_cast<size_t>(i)].dot(v);
    A(1, i) = 1.0;
  }
  for (int j = 0; j < nr; ++j) A(0, np + j) = X.rays()[static_cast<size_t>(j)].dot(v);
  A(0, n - 1) = 1.0;
  Vec b(2);
  b << c, 1.0;
  for (int k = 0; k < d; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec cost = Vec::Zero(n);
      for (int i = 0; i < np; ++i) cost(i) = -sgn * X.points()[static_cast<size_t>(i)](k);
      for (int j = 0; j < nr; ++j) cost(np + j) = -sgn * X.rays()[static_cast<size_t>(j)](k);
      const auto res = lp::solve_standard(A, b, cost);
      if (res.status == lp::Status::infeasible) return true;  // empty sublevel set
      if (res.status == lp::Status::unbounded) return false;
    }
  }
  return true;
}

ConvexSetV build_weighted_delta_family(const std::vector<std::string>& labels,
                                       const std::vector<double>& omega) {
  if (labels.empty()) throw InputError("build_weighted_delta_family: empty point set");
  if (labels.size() != omega.size()) {
    throw InputError("build_weighted_delta_family: one weight per point required");
  }
  for (size_t i = 0; i < omega.size(); ++i) {
    if (!(omega[i] > 0.0) || !std::isfinite(omega[i])) {
      throw InputError("build_weighted_delta_family: weight of '" + labels[i] +
                       "' must be positive");
    }
  }
  const int n = static_cast<int>(labels.size());
  std::vector<Vec> deltas;
  for (int i = 0; i < n; ++i) deltas.push_back(Vec::Unit(n, i));
  return ConvexSetV(std::move(deltas));
}

GrowthBound linear_growth_bound(const ConvexSetV& X, const Vec& v, const Vec& w,
                                const Tolerances& tol) {
  check_dim(X, v, "linear_growth_bound");
  check_dim(X, w, "linear_growth_bound");
  if (!domain_interior(X, v, tol)) {
    throw PreconditionError("linear_growth_bound: v is not in the interior of B(X)");
  }
  double eps = 1.0;
  for (const auto& r : X.rays()) {
    const double rw = std::abs(r.dot(w));
    if (rw > 0.0) eps = std::min(eps, 0.5 * r.dot(v) / rw);
  }
  const double sv = -X.min_point_pairing(v);
  double dval = sv + 1.0;
  dval = std::max(dval, -X.min_point_pairing(v + eps * w));
  dval = std::max(dval, -X.min_point_pairing(v - eps * w));
  return {eps, dval};
}

}  // namespace momentumlab::convex
