#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "momentumlab/abelian.hpp"
#include "momentumlab/convex.hpp"
#include "momentumlab/liealg.hpp"
#include "momentumlab/momentum.hpp"
#include "momentumlab/unirep.hpp"

// JSON and CSV encodings. Complex matrices are flat row-major lists of
// [re, im] pairs; real vectors are plain arrays. Decoders throw InputError on
// malformed documents.
namespace momentumlab::serialize {

using json = nlohmann::json;

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const CMat& M);
CMat cmat_from_json(const json& j);

/// {"points": [[...], ...], "rays": [[...], ...]}
json to_json(const convex::ConvexSetV& X);
convex::ConvexSetV convex_from_json(const json& j);

/// {"label": s, "dim": d, "c": [...], "basis": [matrix, ...]} (basis optional).
json to_json(const liealg::LieAlgebraDesc& L);
liealg::LieAlgebraDesc algebra_from_json(const json& j);

/// {"label", "truncated", "algebra", "generators"}.
json to_json(const unirep::UnitaryRep& rep);
unirep::UnitaryRep rep_from_json(const json& j);

/// {"atoms": [{"alpha": [...], "P": matrix}, ...]}
json to_json(const abelian::SpectralMeasureDiscrete& P);
abelian::SpectralMeasureDiscrete measure_from_json(const json& j);

/// {"norm": r, "bound": b, "satisfied": bool}
json to_json(const abelian::NormReport& r);

json to_json(const std::vector<momentum::SupportRow>& table);
json to_json(const momentum::MomentumSetEstimate& est);

/// Header x0..x{d-1},inner,outer,gap; one row per direction.
std::string support_table_csv(const std::vector<momentum::SupportRow>& table);

/// Shortest decimal form that round-trips the double ("nan", "inf" otherwise).
std::string format_double(double x);

}  // namespace momentumlab::serialize
