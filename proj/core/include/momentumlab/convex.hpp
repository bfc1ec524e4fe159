#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "momentumlab/types.hpp"

// Convex analysis in a finite-dimensional dual space E' ~ R^d.
//
// A closed convex set X is stored in V-representation, conv(points) +
// cone(rays). Its support function is
//
//   s_X(v) = -inf <X, v> = sup <X, -v>,
//
// which is finite exactly on the cone B(X) = { v : <r, v> >= 0 for all rays }.
// X is semi-equicontinuous iff B(X) has interior, i.e. iff cone(rays) is
// pointed. In finite dimension weak-* topology and norm topology agree, so
// the infinite-dimensional distinctions collapse to these polyhedral tests.
namespace momentumlab::convex {

struct Tolerances {
  double cone = 1e-9;  // ray nonnegativity
  double mem = 1e-8;   // membership margin
};

/// Value in R or +infinity. +infinity absorbs addition with reals.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double v) : value_(v) {}
  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
  /// Throws InputError when infinite.
  [[nodiscard]] double value() const;

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
  friend bool operator==(ExtendedReal a, ExtendedReal b);
  friend bool operator<(ExtendedReal a, ExtendedReal b);
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return !(b < a); }

  [[nodiscard]] std::string to_string() const;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// conv(points) + cone(rays) in R^d.
///
/// Construction normalises rays to unit Euclidean length, rejects zero rays
/// and deduplicates points (and rays) closer than 1e-12.
class ConvexSetV {
 public:
  ConvexSetV(std::vector<Vec> points, std::vector<Vec> rays = {});

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<Vec>& points() const { return points_; }
  [[nodiscard]] const std::vector<Vec>& rays() const { return rays_; }
  [[nodiscard]] bool is_bounded() const { return rays_.empty(); }

  /// min over points of <p, v>; the infimum over X when v is in B(X).
  [[nodiscard]] double min_point_pairing(const Vec& v) const;

 private:
  int dim_ = 0;
  std::vector<Vec> points_;
  std::vector<Vec> rays_;
};

struct SemiEquicontinuityCertificate {
  bool verdict = false;
  std::optional<Vec> interior_point;  // point of B(X)^0 when verdict holds
  std::optional<Vec> line_direction;  // r with +-r in cone(rays) otherwise
  double margin = 0.0;                // min over rays of <r, interior_point>
};

/// l1 distance from alpha to X with a dual certificate.
///
/// The separator v satisfies |v|_inf <= 1, <r, v> >= 0 for every ray, and
/// inf <X, v> >= offset = <alpha, v> + distance.
struct HullDistance {
  double distance = 0.0;
  Vec separator;
  double offset = 0.0;
  Vec nearest;  // a point of X realising the distance
};

struct MembershipVerdict {
  enum class Kind { inside, outside, undetermined };
  Kind kind = Kind::undetermined;
  std::optional<Vec> separator;  // present when outside
  double violation = 0.0;        // -s(v) - <alpha, v> for the separator
};

using SupportOracle = std::function<ExtendedReal(const Vec&)>;

/// Constants (epsilon, d) with |<alpha, w>| <= (<alpha, v> + d) / epsilon on X.
struct GrowthBound {
  double epsilon = 0.0;
  double offset = 0.0;
};

/// s_X(v) = sup <X, -v>; +infinity when some ray pairs negatively with v.
ExtendedReal support_function(const ConvexSetV& X, const Vec& v,
                              const Tolerances& tol = {});

/// v in B(X)  <=>  <r, v> >= -tau_cone for every ray r.
bool domain_membership(const ConvexSetV& X, const Vec& v, const Tolerances& tol = {});

/// Strict interior test for B(X): every ray pairs >= tau_cone * |v|.
bool domain_interior(const ConvexSetV& X, const Vec& v, const Tolerances& tol = {});

SemiEquicontinuityCertificate semi_equicontinuity_certificate(const ConvexSetV& X,
                                                              const Tolerances& tol = {});

/// Generators of W* = { alpha : <alpha, w> >= 0 for w in W } for the
/// polyhedral cone W = cone(W_rays), computed by double description.
/// Returned as a set with the single point 0. Supports d <= 16 and at most
/// 10^4 input rays; larger inputs raise CapabilityError.
ConvexSetV dual_cone(const std::vector<Vec>& W_rays);

HullDistance hull_distance(const ConvexSetV& X, const Vec& alpha);

/// Exact LP membership with margin tau_mem (l1 distance).
bool contains(const ConvexSetV& X, const Vec& alpha, const Tolerances& tol = {});

/// Reconstruction test alpha in X <=> alpha(v) >= -s_X(v) for v in B(X)^0.
///
/// Each direction is probed in order; the first with
/// <alpha, v> < -s(v) - tau_mem is returned as separating certificate. When
/// `explicit_set` is given, directions are checked to lie in B(X)^0 and the
/// verdict is completed by the exact LP (its separator is pushed into
/// B(X)^0 when X has rays). Without it, passing all probes is undetermined.
MembershipVerdict membership_reconstruct(const Vec& alpha, const SupportOracle& s_oracle,
                                         const std::vector<Vec>& directions,
                                         const ConvexSetV* explicit_set = nullptr,
                                         const Tolerances& tol = {});

/// Whether the sublevel set { alpha in X : <alpha, v> <= c } is bounded,
/// decided by coordinatewise LP boundedness. Requires v in B(X).
bool properness_check(const ConvexSetV& X, const Vec& v, double c,
                      const Tolerances& tol = {});

/// Point evaluations delta_y on C_omega(Y, R) ~ R^|Y| (indicator basis).
ConvexSetV build_weighted_delta_family(const std::vector<std::string>& labels,
                                       const std::vector<double>& omega);

/// For v in B(X)^0 and any w, the linear-growth constants bounding
/// |eta_w| by eta_v + d on X.
GrowthBound linear_growth_bound(const ConvexSetV& X, const Vec& v, const Vec& w,
                                const Tolerances& tol = {});

}  // namespace momentumlab::convex
