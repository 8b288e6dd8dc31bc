#pragma once

// JSON forms of every report type. Field names follow the report structs;
// the optional standard error is serialized as "stderr".

#include <json.hpp>

#include "cubescore/constructors.hpp"
#include "cubescore/permanent.hpp"
#include "cubescore/score.hpp"
#include "cubescore/structure.hpp"

namespace cubescore {

using Json = nlohmann::ordered_json;

Json to_json(const DenseMatrix& m);
Json to_json(const ScoreReport& r);
Json to_json(const ThresholdScoreReport& r);
Json to_json(const PermanentReport& r);
Json to_json(const GapDescriptor& q);
Json to_json(const ConstructionCertificate& c);
Json to_json(const SparseSignMatrix& f);
Json to_json(const DecompositionReport& r);
Json to_json(const DominanceReport& r);
Json to_json(const ConcentrationReport& r);
Json to_json(const RowClass& c);
Json to_json(const StochasticReport& r);
Json to_json(const RankRVerification& v);
Json to_json(const ProcrustesFit& f);
Json to_json(const HammingCheck& h);

/// Inverse of to_json(DenseMatrix): an array of equal-length rows.
DenseMatrix matrix_from_json(const Json& j);

}  // namespace cubescore
