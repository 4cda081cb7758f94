#pragma once

// JSON encoding of every value the tools exchange. Matrices are row-major
// arrays of rows; each entry is [re, im] (bare numbers are accepted on input
// for real entries). All floats are emitted with shortest round-trip
// formatting, so identical values serialize identically across runs.

#include "json.hpp"
#include "psdisc/acceptance.hpp"
#include "psdisc/construct.hpp"
#include "psdisc/metrics.hpp"
#include "psdisc/oracle.hpp"
#include "psdisc/simulate.hpp"
#include "psdisc/states.hpp"

namespace psdisc {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const nlohmann::json& j);

/// {"dim": n, "rho": [[..]], "sigma": [[..]], "p_rho": x,
///  "tolerances": {...}}; tolerances may be omitted on input.
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

/// {"lambda_rho": [[..]], "lambda_sigma": [[..]]}; parsing validates the
/// effects (PSD, sum below identity).
nlohmann::json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const nlohmann::json& j, const Tolerances& tol = {});

/// {"variant": "EqualC1" | ... | "Unequal3", then the variant's fields}.
nlohmann::json params_to_json(const ConstructionParams& params);
ConstructionParams params_from_json(const nlohmann::json& j);

nlohmann::json metrics_to_json(const MetricsReport& rep);
nlohmann::json acceptance_to_json(const MaxAcceptance& acc);
nlohmann::json lemma_to_json(const LemmaReport& rep);
nlohmann::json sim_to_json(const SimReport& rep);

}  // namespace psdisc
