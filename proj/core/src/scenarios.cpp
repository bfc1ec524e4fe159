#include "momentumlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "momentumlab/abelian.hpp"
#include "momentumlab/convex.hpp"
#include "momentumlab/liealg.hpp"
#include "momentumlab/linalg.hpp"
#include "momentumlab/momentum.hpp"
#include "momentumlab/parallel.hpp"
#include "momentumlab/rkhs.hpp"
#include "momentumlab/serialize.hpp"
#include "momentumlab/unirep.hpp"

namespace momentumlab::scenarios {
namespace {

using serialize::to_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Stream offsets keep the independent random draws of one scenario apart.
constexpr std::uint64_t kTrialStream = 1'000'000;
constexpr std::uint64_t kQueryStream = 2'000'000;

class Context {
 public:
  Context(const ScenarioConfig& config, RunReport& report, const std::map<std::string, double>& defaults)
      : config_(config), report_(report), tol_(defaults) {
    for (const auto& [name, value] : config.tolerances) {
      if (!tol_.count(name)) {
        std::string known;
        for (const auto& [k, v] : defaults) known += (known.empty() ? "" : ", ") + k;
        throw UsageError("unknown tolerance '" + name + "' for scenario '" + config.scenario +
                         "' (known: " + known + ")");
      }
      tol_[name] = value;
    }
  }

  [[nodiscard]] const ScenarioConfig& config() const { return config_; }
  [[nodiscard]] std::uint64_t seed() const { return config_.seed; }
  json& results() { return report_.results; }
  RunReport& report() { return report_; }

  [[nodiscard]] double tol(const std::string& name) const { return tol_.at(name); }

  void check(const std::string& name, const std::string& tol_name, double residual,
             std::string detail = {}) {
    const double t = tol(tol_name);
    report_.checks.push_back({name, t, residual, residual <= t, std::move(detail)});
  }

  void check_true(const std::string& name, bool ok, std::string detail = {}) {
    report_.checks.push_back({name, 0.0, ok ? 0.0 : 1.0, ok, std::move(detail)});
  }

  [[nodiscard]] double param_double(const std::string& key, double fallback) const {
    const auto& p = config_.params;
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number()) throw UsageError("parameter '" + key + "' must be a number");
    return p.at(key).get<double>();
  }

  [[nodiscard]] int param_int(const std::string& key, int fallback) const {
    const auto& p = config_.params;
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number_integer()) throw UsageError("parameter '" + key + "' must be an integer");
    return p.at(key).get<int>();
  }

  [[nodiscard]] std::vector<int> param_int_list(const std::string& key, std::vector<int> fallback) const {
    const auto& p = config_.params;
    if (!p.contains(key)) return fallback;
    const auto& v = p.at(key);
    if (!v.is_array()) throw UsageError("parameter '" + key + "' must be a list of integers");
    std::vector<int> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw UsageError("parameter '" + key + "' must be a list of integers");
      out.push_back(e.get<int>());
    }
    return out;
  }

  [[nodiscard]] std::vector<double> param_double_list(const std::string& key,
                                                      std::vector<double> fallback) const {
    const auto& p = config_.params;
    if (!p.contains(key)) return fallback;
    const auto& v = p.at(key);
    if (!v.is_array()) throw UsageError("parameter '" + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw UsageError("parameter '" + key + "' must be a list of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  /// Explicit directions from the config, else the generated set.
  [[nodiscard]] std::vector<Vec> directions(int d) const {
    if (config_.directions.empty()) return momentum::default_directions(d, config_.direction_count, seed());
    for (const auto& v : config_.directions) {
      if (v.size() != d) throw UsageError("direction of dimension " + std::to_string(v.size()) +
                                          ", scenario needs " + std::to_string(d));
    }
    return config_.directions;
  }

 private:
  const ScenarioConfig& config_;
  RunReport& report_;
  std::map<std::string, double> tol_;
};

Vec gaussian_vec(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

json growth_to_json(const momentum::DirectionGrowth& g) {
  return {{"direction", to_json(g.direction)},
          {"levels", g.levels},
          {"sup_values", g.sup_values},
          {"loglog_slope", number(g.loglog_slope)},
          {"linear_slope", number(g.linear_slope)},
          {"increase", number(g.increase)},
          {"bounded", g.bounded}};
}

json verdict_to_json(const momentum::BoundednessVerdict& v) {
  json out = {{"kind", momentum::to_string(v.kind)},
              {"equicontinuity_constant", number(v.equicontinuity_constant)}};
  json w = json::array();
  for (const auto& x : v.witnesses) w.push_back(to_json(x));
  out["witnesses"] = w;
  if (v.interior_point) out["interior_point"] = to_json(*v.interior_point);
  return out;
}

const momentum::DirectionGrowth* find_growth(const momentum::BoundednessVerdict& v, const Vec& dir) {
  for (const auto& g : v.growth) {
    if (g.direction.size() == dir.size() && (g.direction - dir).cwiseAbs().maxCoeff() == 0.0) return &g;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

void run_su2(Context& ctx) {
  const double j = ctx.param_double("j", 1.0);
  const double twice = 2.0 * j;
  if (j < 0.0 || std::abs(twice - std::round(twice)) > 1e-12 || twice > 64) {
    throw UsageError("parameter 'j' must be a half-integer in [0, 32]");
  }
  const auto rep = unirep::su2_spin(static_cast<int>(std::lround(twice)));
  const auto dirs = ctx.directions(3);
  const auto est = momentum::momentum_set_estimate(rep, ctx.config().n_samples, dirs, ctx.seed());

  double worst_gap = 0.0;
  for (const auto& row : est.table) worst_gap = std::max(worst_gap, std::abs(row.gap()));
  ctx.check("support_identity", "support", worst_gap, "max |outer - inner| over directions");

  const Vec e3 = Vec::Unit(3, 2);
  const double s_outer = unirep::spectral_sup(rep, e3);
  const double s_inner = -est.inner.min_point_pairing(e3);
  ctx.check("support_e3", "support", std::max(std::abs(s_outer - j), std::abs(s_inner - j)),
            "support value on e3 against j");

  ctx.check("homomorphism", "homomorphism", unirep::homomorphism_residual(rep));

  double eq = 0.0;
  const int trials = ctx.param_int("equivariance_trials", 20);
  for (int t = 0; t < trials; ++t) {
    auto rng = parallel::stream_rng(ctx.seed(), kTrialStream + static_cast<std::uint64_t>(t));
    const Vec y = gaussian_vec(3, rng);
    const momentum::ProjectiveVector v(linalg::complex_gaussian(rep.space_dim(), rng));
    eq = std::max(eq, momentum::equivariance_residual(rep, y, v).residual);
  }
  ctx.check("equivariance", "equivariance", eq, std::to_string(trials) + " random (y, v) trials");

  const auto verdict = momentum::classify_boundedness(rep);
  ctx.check_true("bounded", verdict.kind == momentum::BoundednessVerdict::Kind::bounded);

  auto& r = ctx.results();
  r["j"] = j;
  r["space_dim"] = rep.space_dim();
  r["support_e3"] = number(s_outer);
  r["momentum_set"] = to_json(est.inner);
  r["boundedness"] = verdict_to_json(verdict);
  ctx.report().support_table = est.table;
}

void run_abelian_triangle(Context& ctx) {
  auto rng = parallel::stream_rng(ctx.seed(), 0);
  const CMat U = linalg::random_unitary(3, rng);
  std::vector<Vec> alphas = {Vec::Zero(2), Vec::Unit(2, 0), Vec::Unit(2, 1)};
  std::vector<abelian::Atom> atoms;
  for (int k = 0; k < 3; ++k) atoms.push_back({alphas[static_cast<size_t>(k)], U.col(k) * U.col(k).adjoint()});
  const abelian::SpectralMeasureDiscrete P(atoms);
  const convex::ConvexSetV triangle(alphas);

  const auto hull = abelian::momentum_set_of_measure(P);
  double hull_err = 0.0;
  for (const auto& a : alphas) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : hull.points()) best = std::min(best, (p - a).norm());
    hull_err = std::max(hull_err, best);
  }
  if (hull.points().size() != alphas.size()) hull_err = std::max(hull_err, 1.0);
  ctx.check("hull_vertices", "hull", hull_err, "momentum set hull against the triangle vertices");

  const auto rep = abelian::rep_of_measure(P);
  const auto dirs = ctx.directions(2);
  const auto est = momentum::momentum_set_estimate(rep, ctx.config().n_samples, dirs, ctx.seed());
  double est_err = est.gap;
  for (const auto& row : est.table) {
    est_err = std::max(est_err, std::abs(row.outer - convex::support_function(triangle, row.direction).value()));
  }
  ctx.check("estimate_gap", "estimate", est_err, "estimate gap and outer support against the triangle");

  double law = 0.0, semigroup = 0.0, involution = 0.0, compat = 0.0;
  bool bound_ok = true;
  json reports = json::array();
  const int trials = ctx.param_int("tube_points", 20);
  for (int t = 0; t < trials; ++t) {
    auto trng = parallel::stream_rng(ctx.seed(), kTrialStream + static_cast<std::uint64_t>(t));
    const abelian::TubeElement s{gaussian_vec(2, trng), gaussian_vec(2, trng)};
    const abelian::TubeElement u{gaussian_vec(2, trng), gaussian_vec(2, trng)};
    const Vec v = gaussian_vec(2, trng);
    const auto ext = abelian::semigroup_extension(P, s, &triangle);
    double min_pair = std::numeric_limits<double>::infinity();
    for (const auto& a : alphas) min_pair = std::min(min_pair, a.dot(s.y));
    const double expect = std::exp(-min_pair);
    law = std::max(law, std::abs(ext.report.norm - expect) / expect);
    bound_ok = bound_ok && ext.report.satisfied;
    const CMat hs = abelian::pi_hat(P, s);
    const CMat hu = abelian::pi_hat(P, u);
    const double scale = std::max(1.0, hs.norm() * hu.norm());
    semigroup = std::max(semigroup, (hs * hu - abelian::pi_hat(P, s + u)).norm() / scale);
    involution = std::max(involution, (abelian::pi_hat(P, s.star()) - hs.adjoint()).norm() / std::max(1.0, hs.norm()));
    compat = std::max(compat, (abelian::rep_from_measure(P, v) * hs -
                               abelian::pi_hat(P, abelian::TubeElement{v, Vec::Zero(2)} + s))
                                      .norm() / std::max(1.0, hs.norm()));
    reports.push_back(to_json(ext.report));
  }
  ctx.check("norm_law", "norm_law", law, "relative |norm - exp(-min <alpha_k, y>)|");
  ctx.check_true("norm_bound", bound_ok, "norm <= exp(-inf <X, y>) for X the triangle");
  ctx.check("semigroup_law", "semigroup", semigroup);
  ctx.check("involution_law", "semigroup", involution);
  ctx.check("translation_compatibility", "semigroup", compat);

  const auto rec = abelian::recover_measure(abelian::generators_of_measure(P));
  double rec_err = rec.measure.atoms().size() == atoms.size() ? 0.0 : 1.0;
  for (const auto& a : atoms) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : rec.measure.atoms()) {
      best = std::min(best, std::max((a.alpha - b.alpha).cwiseAbs().maxCoeff(), (a.P - b.P).norm()));
    }
    rec_err = std::max(rec_err, best);
  }
  ctx.check("recovery_round_trip", "recovery", rec_err);

  auto& r = ctx.results();
  r["momentum_set"] = to_json(hull);
  r["measure"] = to_json(P);
  r["norm_reports"] = reports;
  r["cluster_events"] = static_cast<int>(rec.cluster_events.size());
  ctx.report().support_table = est.table;
}

void run_oscillator(Context& ctx) {
  const auto levels = ctx.param_int_list("levels", {32, 64, 128});
  std::vector<unirep::UnitaryRep> family;
  for (int n : levels) family.push_back(unirep::oscillator_truncated(n));
  const auto verdict = momentum::classify_boundedness(family);
  ctx.check_true("semibounded", verdict.kind == momentum::BoundednessVerdict::Kind::semibounded,
                 "verdict " + momentum::to_string(verdict.kind));

  const Vec minus_h = -Vec::Unit(4, 3);
  const Vec plus_h = Vec::Unit(4, 3);
  const auto* gm = find_growth(verdict, minus_h);
  const auto* gp = find_growth(verdict, plus_h);
  ctx.check_true("bounded_direction_minus_h", gm && gm->bounded);
  double sup_minus = 0.0;
  if (gm) {
    for (double s : gm->sup_values) sup_minus = std::max(sup_minus, std::abs(s));
  }
  ctx.check("support_minus_h", "support", gm ? sup_minus : kNaN, "|s(-h)| across the family");
  ctx.check("linear_slope_h", "slope", gp ? std::abs(gp->linear_slope - 1.0) : kNaN,
            "|slope of s(h) against N - 1|");

  json growth = json::array();
  for (const auto& g : verdict.growth) growth.push_back(growth_to_json(g));
  auto& r = ctx.results();
  r["levels"] = levels;
  r["boundedness"] = verdict_to_json(verdict);
  r["growth"] = growth;
}

void run_heisenberg(Context& ctx) {
  const auto levels = ctx.param_int_list("levels", {16, 32, 64});
  std::vector<unirep::UnitaryRep> family;
  for (int n : levels) family.push_back(unirep::heisenberg_truncated(n));
  const auto verdict = momentum::classify_boundedness(family);
  ctx.check_true("unbounded_directionwise",
                 verdict.kind == momentum::BoundednessVerdict::Kind::unbounded_directionwise,
                 "verdict " + momentum::to_string(verdict.kind));
  double center = 0.0;
  for (const Vec& z : {Vec(Vec::Unit(3, 2)), Vec(-Vec::Unit(3, 2))}) {
    const double first = unirep::spectral_sup(family.front(), z);
    for (const auto& rep : family) center = std::max(center, std::abs(unirep::spectral_sup(rep, z) - first));
  }
  ctx.check("center_bounded", "support", center, "variation of s(+-z) across the family");
  const auto* gp = find_growth(verdict, Vec::Unit(3, 0));
  ctx.check_true("growth_p", gp && !gp->bounded, "s(p) grows with the truncation level");

  json growth = json::array();
  for (const auto& g : verdict.growth) growth.push_back(growth_to_json(g));
  auto& r = ctx.results();
  r["levels"] = levels;
  r["boundedness"] = verdict_to_json(verdict);
  r["growth"] = growth;
}

std::vector<rkhs::Point> contraction_model_points() {
  std::vector<rkhs::Point> pts{rkhs::Point::Zero(1)};
  for (int k = 0; k < 5; ++k) {
    pts.push_back(rkhs::Point::Constant(1, std::polar(1.0, 2.0 * std::numbers::pi * k / 5.0)));
  }
  for (int k = 0; k < 3; ++k) {
    pts.push_back(rkhs::Point::Constant(1, std::polar(1.8, 2.0 * std::numbers::pi * (k + 0.5) / 3.0)));
  }
  return pts;
}

void run_fock(Context& ctx) {
  const double R = ctx.param_double("radius", 2.0);
  const int levels = ctx.param_int("levels", 64);
  const int n_points = ctx.param_int("points", 50);
  const auto bs = ctx.param_double_list("b_values", {0.1, 1.0, 10.0});
  if (!(R > 0.0) || levels < 2 || n_points < 2) throw UsageError("fock-rotation-rkhs: invalid parameters");

  const auto K = rkhs::fock_kernel(1);
  const auto action = rkhs::torus_rotation(1);
  const auto oracle = rkhs::fock_rotation_oracle(1, levels);
  const Vec e1 = Vec::Unit(1, 0);
  const std::vector<Vec> dirs{e1, Vec(-e1)};
  const auto sampler = rkhs::polydisc_sampler(1, R);
  const auto set = rkhs::kernel_momentum_set(K, action, dirs, sampler, n_points, ctx.seed(), &oracle);

  double closed = 0.0, vs_oracle = 0.0;
  for (int i = 0; i < n_points; ++i) {
    auto rng = parallel::stream_rng(ctx.seed(), static_cast<std::uint64_t>(i));
    const rkhs::Point m = sampler(rng, static_cast<size_t>(i));
    const double phi = rkhs::kernel_momentum_value(K, action, e1, m);
    closed = std::max(closed, std::abs(phi + std::norm(m(0))));
    const momentum::ProjectiveVector v(rkhs::fock_section_coefficients(m, levels));
    vs_oracle = std::max(vs_oracle, std::abs(phi - momentum::momentum_map(oracle, v)(0)));
  }
  ctx.check("closed_form", "closed_form", closed, "|Phi(K_m) + |m|^2|");
  ctx.check("oracle_agreement", "oracle", vs_oracle, "kernel value against the truncated matrix model");

  const double s_plus = -set.inner.min_point_pairing(e1);
  const double s_minus = -set.inner.min_point_pairing(-e1);
  ctx.check("inner_hull", "hull", std::max(std::abs(s_plus - R * R), std::abs(s_minus)),
            "inner hull against [-R^2, 0]");
  double ext_gap = kNaN;
  for (const auto& row : set.table) {
    if (row.direction(0) < 0) ext_gap = std::abs(row.gap());
  }
  ctx.check("extension_direction_gap", "gap", ext_gap, "outer - inner on the contracting direction");

  const rkhs::FiniteModel model(K, contraction_model_points());
  json contractions = json::array();
  for (double b : bs) {
    const auto c = rkhs::contraction_check(action, -e1, b, model);
    ctx.check("contraction_b=" + serialize::format_double(b), "contraction",
              std::max(0.0, c.lhs_norm - std::min(1.0, c.rhs_bound)), "norm <= min(1, exp(b sup))");
    contractions.push_back({{"b", b},
                            {"lhs_norm", number(c.lhs_norm)},
                            {"rhs_bound", number(c.rhs_bound)},
                            {"sup_value", number(c.sup_value)},
                            {"verdict", c.verdict}});
  }
  ctx.check("semigroup", "semigroup", rkhs::semigroup_residual(action, -e1, 0.5, 1.0, model));

  std::vector<Vec> thetas;
  std::vector<rkhs::Point> pts;
  for (int t = 0; t < 5; ++t) {
    auto rng = parallel::stream_rng(ctx.seed(), kTrialStream + static_cast<std::uint64_t>(t));
    thetas.push_back(gaussian_vec(1, rng, 3.0));
    pts.push_back(sampler(rng, 1u << 4));
  }
  ctx.check("kernel_invariance", "invariance", rkhs::invariance_residual(K, action, thetas, pts));
  ctx.check("action_law", "invariance", rkhs::action_law_residual(action, thetas, pts));

  auto& r = ctx.results();
  r["radius"] = R;
  r["levels"] = levels;
  r["momentum_set"] = to_json(set.inner);
  r["used_points"] = set.used_points;
  r["skipped_points"] = set.skipped_points;
  r["gram_min_eigenvalue"] = number(model.min_eigenvalue());
  r["contraction"] = contractions;
  ctx.report().support_table = set.table;
}

void run_torus_poisson(Context& ctx) {
  using liealg::TrigPolynomial;
  const int n_max = ctx.param_int("n_max", 64);
  if (n_max < 1 || n_max > TrigPolynomial::kMaxFrequency) {
    throw UsageError("parameter 'n_max' must lie in [1, 128]");
  }
  const auto g = TrigPolynomial::cos_y(1);
  const double g_norm = std::sqrt(liealg::l2_inner_torus(g, g));
  double ratio_spread = 0.0, exact = 0.0;
  bool monotone = true;
  double first = kNaN, prev = -1.0;
  json table = json::array();
  for (int n = 1; n <= n_max; ++n) {
    const auto f = TrigPolynomial::cos_x(n);
    const auto b = liealg::poisson_bracket_torus(f, g);
    // n sin(nx) sin(y) = -(n/4)(e^{i(nx+y)} - e^{i(nx-y)} - e^{i(-nx+y)} + e^{-i(nx+y)}).
    TrigPolynomial expect;
    const double q = -0.25 * n;
    expect.add(n, 1, q);
    expect.add(n, -1, -q);
    expect.add(-n, 1, -q);
    expect.add(-n, -1, q);
    for (const auto& [key, a] : b.coefficients()) {
      exact = std::max(exact, std::abs(a - expect.coefficient(key.first, key.second)));
    }
    for (const auto& [key, a] : expect.coefficients()) {
      exact = std::max(exact, std::abs(a - b.coefficient(key.first, key.second)));
    }
    const double ratio = std::sqrt(liealg::l2_inner_torus(b, b)) / std::sqrt(liealg::l2_inner_torus(f, f));
    if (n == 1) first = ratio;
    ratio_spread = std::max(ratio_spread, std::abs(ratio / n - first));
    monotone = monotone && ratio > prev;
    prev = ratio;
    table.push_back({{"n", n}, {"ratio", number(ratio)}, {"ratio_over_n", number(ratio / n)}});
  }
  ctx.check("bracket_closed_form", "exact", exact, "{cos nx, cos y} against n sin nx sin y");
  ctx.check("ratio_over_n_constant", "ratio", ratio_spread, "max |ratio(n)/n - ratio(1)|");
  ctx.check("ratio_over_n_value", "ratio", std::abs(first - std::numbers::sqrt2 / 2.0),
            "ratio(1) against 1/sqrt(2) (the L2 norm factor of sin y over |cos y|)");
  ctx.check_true("monotone_growth", monotone);

  double trans = 0.0, anti = 0.0;
  const int trials = ctx.param_int("translation_trials", 20);
  for (int t = 0; t < trials; ++t) {
    auto rng = parallel::stream_rng(ctx.seed(), kTrialStream + static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<int> freq(-6, 6);
    std::normal_distribution<double> coef(0.0, 1.0);
    auto random_real = [&]() {
      TrigPolynomial p;
      for (int k = 0; k < 6; ++k) {
        const int m = freq(rng), n = freq(rng);
        const cplx a(coef(rng), coef(rng));
        p.add(m, n, a);
        p.add(-m, -n, std::conj(a));
      }
      return p;
    };
    const auto f = random_real();
    const auto h = random_real();
    std::uniform_real_distribution<double> shift(0.0, 2.0 * std::numbers::pi);
    const double s = shift(rng), u = shift(rng);
    const double base = liealg::l2_inner_torus(f, h);
    trans = std::max(trans, std::abs(liealg::l2_inner_torus(f.translated(s, u), h.translated(s, u)) - base) /
                                std::max(1.0, std::abs(base)));
    const auto fh = liealg::poisson_bracket_torus(f, h);
    const auto hf = liealg::poisson_bracket_torus(h, f);
    for (const auto& [key, a] : (fh + hf).coefficients()) anti = std::max(anti, std::abs(a));
    for (const auto& [key, a] : liealg::poisson_bracket_torus(f, f).coefficients()) anti = std::max(anti, std::abs(a));
  }
  ctx.check("translation_invariance", "translation", trans, "relative change of (f, g) under translation");
  ctx.check("antisymmetry", "exact", anti, "{f,g} + {g,f} and {f,f}");

  auto& r = ctx.results();
  r["n_max"] = n_max;
  r["g_norm"] = number(g_norm);
  r["growth_table"] = table;
}

std::vector<Vec> random_points(int count, int d, std::mt19937_64& rng) {
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) pts.push_back(gaussian_vec(d, rng));
  return pts;
}

// Whether alpha lies in X with l1 margin >= delta or outside with l1 distance >= delta.
std::optional<bool> decided_with_margin(const convex::ConvexSetV& X, const Vec& alpha, double delta) {
  const auto hd = convex::hull_distance(X, alpha);
  if (hd.distance >= delta) return false;
  if (hd.distance > 0.0) return std::nullopt;
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    for (double sgn : {1.0, -1.0}) {
      if (convex::hull_distance(X, alpha + sgn * delta * Vec::Unit(alpha.size(), k)).distance > 1e-12) {
        return std::nullopt;
      }
    }
  }
  return true;
}

void run_random_polytope(Context& ctx) {
  const int n_poly = ctx.param_int("polytopes", 20);
  const int queries = ctx.param_int("queries", 50);
  const int n_cones = ctx.param_int("cones", 10);
  if (n_poly < 1 || queries < 1 || n_cones < 0) throw UsageError("random-polytope-convex: invalid counts");
  const double margin = ctx.tol("margin");
  const auto probe_dirs = momentum::default_directions(3, 64, ctx.seed());

  int disagreements = 0, decided = 0, inside = 0;
  double worst_cert = 0.0;
  for (int p = 0; p < n_poly; ++p) {
    auto rng = parallel::stream_rng(ctx.seed(), static_cast<std::uint64_t>(p));
    std::uniform_int_distribution<int> count(5, 12);
    const convex::ConvexSetV X(random_points(count(rng), 3, rng));
    const convex::SupportOracle s = [&X](const Vec& v) { return convex::support_function(X, v); };
    for (int q = 0; q < queries; ++q) {
      auto qrng = parallel::stream_rng(ctx.seed(), kQueryStream + static_cast<std::uint64_t>(p * queries + q));
      const Vec alpha = gaussian_vec(3, qrng, 0.8);
      const auto truth = decided_with_margin(X, alpha, margin);
      if (!truth) continue;
      ++decided;
      inside += *truth ? 1 : 0;
      const auto verdict = convex::membership_reconstruct(alpha, s, probe_dirs, &X);
      const bool says_inside = verdict.kind == convex::MembershipVerdict::Kind::inside;
      if (says_inside != *truth) ++disagreements;
      if (verdict.separator) {
        worst_cert = std::max(worst_cert, std::max(0.0, -verdict.violation));
      }
    }
  }
  ctx.check("membership_disagreements", "disagreements", disagreements,
            std::to_string(decided) + " decided queries, " + std::to_string(inside) + " inside");
  ctx.check("separator_certificates", "certificate", worst_cert, "separators violate the support bound");

  double dual_support = 0.0;
  int boundary_errors = 0;
  for (int c = 0; c < n_cones; ++c) {
    auto rng = parallel::stream_rng(ctx.seed(), kTrialStream + static_cast<std::uint64_t>(c));
    std::vector<Vec> W;
    std::uniform_int_distribution<int> count(3, 6);
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      Vec r = gaussian_vec(3, rng, 0.5);
      r(2) = std::abs(r(2)) + 1.0;
      W.push_back(r);
    }
    const auto Wstar = convex::dual_cone(W);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int t = 0; t < 20; ++t) {
      Vec w = Vec::Zero(3);
      for (const auto& r : W) w += u(rng) * r;
      dual_support = std::max(dual_support, std::abs(convex::support_function(Wstar, w).value()));
      // Boundary probes: on a generator (inside the closure) and just beyond it.
      const auto& r = W[static_cast<size_t>(t) % W.size()];
      const Vec outward = r + 1e-3 * (r - w);
      if (!convex::domain_membership(Wstar, r)) ++boundary_errors;
      if (convex::contains(convex::ConvexSetV({Vec::Zero(3)}, W), outward) !=
          convex::domain_membership(Wstar, outward)) {
        ++boundary_errors;
      }
    }
  }
  ctx.check("dual_cone_support", "dual_support", dual_support, "s_{W*} on interior points of W");
  ctx.check("dual_cone_domain", "disagreements", boundary_errors, "B(W*) against the closure of W");

  auto& r = ctx.results();
  r["polytopes"] = n_poly;
  r["queries_per_polytope"] = queries;
  r["decided_queries"] = decided;
  r["inside_queries"] = inside;
  r["cones"] = n_cones;
}

struct Entry {
  ScenarioInfo info;
  std::map<std::string, double> tolerances;
  std::function<void(Context&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"su2-spin-j", "su(2) spin-j: momentum set support identity, equivariance, boundedness"},
       {{"support", 1e-10}, {"equivariance", 1e-8}, {"homomorphism", 1e-9}},
       run_su2},
      {{"abelian-triangle", "three-atom spectral measure on R^2: hull, tube norm law, recovery"},
       {{"hull", 1e-12}, {"estimate", 1e-9}, {"norm_law", 1e-12}, {"semigroup", 1e-12}, {"recovery", 1e-8}},
       run_abelian_triangle},
      {{"oscillator-truncation", "oscillator algebra Fock truncations: semiboundedness trend"},
       {{"support", 1e-9}, {"slope", 0.05}},
       run_oscillator},
      {{"heisenberg-truncation", "Heisenberg Schroedinger truncations: directionwise unboundedness"},
       {{"support", 1e-9}},
       run_heisenberg},
      {{"fock-rotation-rkhs", "Fock space with circle rotation: kernel momentum set and contractions"},
       {{"closed_form", 1e-8},
        {"oracle", 1e-6},
        {"hull", 1e-6},
        {"gap", 1e-6},
        {"contraction", 1e-6},
        {"semigroup", 1e-6},
        {"invariance", 1e-12}},
       run_fock},
      {{"torus-poisson", "Poisson bracket on the 2-torus: L2 growth certificate"},
       {{"exact", 1e-12}, {"ratio", 1e-10}, {"translation", 1e-12}},
       run_torus_poisson},
      {{"random-polytope-convex", "random polytopes and cones in R^3: membership and dual cones"},
       {{"margin", 1e-6}, {"disagreements", 0.5}, {"certificate", 1e-9}, {"dual_support", 1e-12}},
       run_random_polytope},
  };
  return entries;
}

int json_int(const json& v, const char* key) {
  if (!v.is_number_integer()) throw UsageError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
  ScenarioConfig c;
  c.merge(j);
  return c;
}

void ScenarioConfig::merge(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "scenario") {
      if (!v.is_string()) throw UsageError("'scenario' must be a string");
      scenario = v.get<std::string>();
    } else if (key == "seed") {
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
        throw UsageError("'seed' must be a non-negative integer");
      }
      seed = v.get<std::uint64_t>();
    } else if (key == "samples" || key == "n_samples") {
      n_samples = json_int(v, "samples");
    } else if (key == "directions") {
      if (v.is_number_integer()) {
        direction_count = v.get<int>();
        directions.clear();
      } else if (v.is_array()) {
        directions.clear();
        for (const auto& d : v) {
          try {
            directions.push_back(serialize::vec_from_json(d));
          } catch (const InputError& e) {
            throw UsageError(std::string("'directions': ") + e.what());
          }
        }
      } else {
        throw UsageError("'directions' must be a count or a list of vectors");
      }
    } else if (key == "tol") {
      if (!v.is_object()) throw UsageError("'tol' must be an object of name: value");
      for (const auto& [name, t] : v.items()) {
        if (!t.is_number()) throw UsageError("tolerance '" + name + "' must be a number");
        tolerances[name] = t.get<double>();
      }
    } else if (key == "output") {
      if (!v.is_string()) throw UsageError("'output' must be a string");
      output = v.get<std::string>();
    } else if (key == "format") {
      if (!v.is_string()) throw UsageError("'format' must be a string");
      format = v.get<std::string>();
    } else {
      params[key] = v;
    }
  }
}

void ScenarioConfig::validate() const {
  if (scenario.empty()) throw UsageError("no scenario given");
  const auto& reg = registry();
  if (std::none_of(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.label == scenario; })) {
    throw UsageError("unknown scenario '" + scenario + "'");
  }
  if (n_samples < 1) throw UsageError("samples must be >= 1");
  if (direction_count < 1 && directions.empty()) throw UsageError("direction count must be >= 1");
  for (const auto& d : directions) {
    if (d.size() == 0 || !d.allFinite() || d.isZero(0.0)) throw UsageError("directions must be finite and nonzero");
  }
  for (const auto& [name, t] : tolerances) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("tolerance '" + name + "' must be positive");
  }
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

int RunReport::exit_code() const { return passed() ? 0 : 1; }

std::vector<std::string> RunReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

json RunReport::to_json(bool with_timing) const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"tolerance", number(c.tolerance)},
                           {"residual", number(c.residual)},
                           {"passed", c.passed},
                           {"detail", c.detail}});
  }
  json out = {{"schema_version", kSchemaVersion},
              {"scenario", scenario},
              {"seed", seed},
              {"config", config},
              {"passed", passed()},
              {"failed", failed_checks()},
              {"checks", checks_json},
              {"results", results},
              {"support_table", serialize::to_json(support_table)}};
  if (with_timing) out["timing"] = {{"elapsed_seconds", elapsed_seconds}};
  return out;
}

std::string RunReport::to_csv() const {
  if (!support_table.empty()) return serialize::support_table_csv(support_table);
  std::ostringstream os;
  os << "name,tolerance,residual,passed\n";
  for (const auto& c : checks) {
    os << c.name << "," << serialize::format_double(c.tolerance) << "," << serialize::format_double(c.residual)
       << "," << (c.passed ? "true" : "false") << "\n";
  }
  return os.str();
}

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

RunReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.label == config.scenario; });
  RunReport report;
  report.scenario = config.scenario;
  report.seed = config.seed;
  json dirs;
  if (config.directions.empty()) {
    dirs = config.direction_count;
  } else {
    dirs = json::array();
    for (const auto& d : config.directions) dirs.push_back(serialize::to_json(d));
  }
  report.config = {{"samples", config.n_samples}, {"directions", dirs}, {"tol", config.tolerances},
                   {"params", config.params}, {"format", config.format}};
  const auto start = std::chrono::steady_clock::now();
  Context ctx(config, report, it->tolerances);
  it->run(ctx);
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace momentumlab::scenarios
