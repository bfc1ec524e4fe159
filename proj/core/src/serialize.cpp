#include "momentumlab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace momentumlab::serialize {
namespace {

json number(double x) {
  // JSON has no NaN or infinity; encode them as null.
  return std::isfinite(x) ? json(x) : json(nullptr);
}

double double_from(const json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw InputError(std::string("expected a number for ") + what);
  return j.get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = double_from(j[i], "vector entry");
  return v;
}

json to_json(const CMat& M) {
  json out = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) out.push_back({number(M(r, c).real()), number(M(r, c).imag())});
  }
  return out;
}

CMat cmat_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix as an array of [re, im] pairs");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (static_cast<size_t>(n * n) != j.size()) throw InputError("matrix entry count is not a square");
  CMat M(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = j[static_cast<size_t>(r * n + c)];
      if (!e.is_array() || e.size() != 2) throw InputError("matrix entry is not an [re, im] pair");
      M(r, c) = cplx(double_from(e[0], "matrix entry"), double_from(e[1], "matrix entry"));
    }
  }
  return M;
}

json to_json(const convex::ConvexSetV& X) {
  json pts = json::array();
  json rays = json::array();
  for (const auto& p : X.points()) pts.push_back(to_json(p));
  for (const auto& r : X.rays()) rays.push_back(to_json(r));
  return {{"points", pts}, {"rays", rays}};
}

convex::ConvexSetV convex_from_json(const json& j) {
  std::vector<Vec> pts;
  std::vector<Vec> rays;
  for (const auto& p : field(j, "points")) pts.push_back(vec_from_json(p));
  if (j.contains("rays")) {
    for (const auto& r : j.at("rays")) rays.push_back(vec_from_json(r));
  }
  return convex::ConvexSetV(std::move(pts), std::move(rays));
}

json to_json(const liealg::LieAlgebraDesc& L) {
  json out = {{"label", L.label()}, {"dim", L.dim()}, {"c", L.structure_constants()}};
  if (L.matrix_basis()) {
    json basis = json::array();
    for (const auto& B : *L.matrix_basis()) basis.push_back(to_json(B));
    out["basis"] = basis;
  }
  return out;
}

liealg::LieAlgebraDesc algebra_from_json(const json& j) {
  const int d = field(j, "dim").get<int>();
  const auto& cj = field(j, "c");
  if (!cj.is_array()) throw InputError("'c' must be an array");
  std::vector<double> c;
  for (const auto& e : cj) c.push_back(double_from(e, "structure constant"));
  std::optional<std::vector<CMat>> basis;
  if (j.contains("basis") && !j.at("basis").is_null()) {
    basis.emplace();
    for (const auto& B : j.at("basis")) basis->push_back(cmat_from_json(B));
  }
  return liealg::LieAlgebraDesc(j.value("label", std::string("custom")), d, std::move(c), std::move(basis));
}

json to_json(const unirep::UnitaryRep& rep) {
  json gens = json::array();
  for (const auto& A : rep.generators()) gens.push_back(to_json(A));
  return {{"label", rep.label()},
          {"truncated", rep.truncated()},
          {"algebra", to_json(rep.algebra())},
          {"generators", gens}};
}

unirep::UnitaryRep rep_from_json(const json& j) {
  std::vector<CMat> gens;
  for (const auto& A : field(j, "generators")) gens.push_back(cmat_from_json(A));
  return unirep::UnitaryRep(algebra_from_json(field(j, "algebra")), std::move(gens),
                            j.value("truncated", false), j.value("label", std::string("custom")));
}

json to_json(const abelian::SpectralMeasureDiscrete& P) {
  json atoms = json::array();
  for (const auto& a : P.atoms()) atoms.push_back({{"alpha", to_json(a.alpha)}, {"P", to_json(a.P)}});
  return {{"atoms", atoms}};
}

abelian::SpectralMeasureDiscrete measure_from_json(const json& j) {
  std::vector<abelian::Atom> atoms;
  for (const auto& a : field(j, "atoms")) {
    atoms.push_back({vec_from_json(field(a, "alpha")), cmat_from_json(field(a, "P"))});
  }
  return abelian::SpectralMeasureDiscrete(std::move(atoms));
}

json to_json(const abelian::NormReport& r) {
  return {{"norm", number(r.norm)}, {"bound", number(r.bound)}, {"satisfied", r.satisfied}};
}

json to_json(const std::vector<momentum::SupportRow>& table) {
  json out = json::array();
  for (const auto& row : table) {
    out.push_back({{"direction", to_json(row.direction)},
                   {"inner", number(row.inner)},
                   {"outer", number(row.outer)},
                   {"gap", number(row.gap())}});
  }
  return out;
}

json to_json(const momentum::MomentumSetEstimate& est) {
  return {{"inner", to_json(est.inner)},
          {"table", to_json(est.table)},
          {"gap", number(est.gap)},
          {"n_samples", est.n_samples},
          {"injected", est.injected}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string support_table_csv(const std::vector<momentum::SupportRow>& table) {
  std::ostringstream os;
  const Eigen::Index d = table.empty() ? 0 : table.front().direction.size();
  for (Eigen::Index k = 0; k < d; ++k) os << "x" << k << ",";
  os << "inner,outer,gap\n";
  for (const auto& row : table) {
    for (Eigen::Index k = 0; k < d; ++k) os << format_double(row.direction(k)) << ",";
    os << format_double(row.inner) << "," << format_double(row.outer) << "," << format_double(row.gap())
       << "\n";
  }
  return os.str();
}

}  // namespace momentumlab::serialize
