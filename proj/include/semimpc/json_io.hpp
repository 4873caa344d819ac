#pragma once

#include "semimpc/adapters.hpp"
#include "semimpc/engine.hpp"
#include "semimpc/routing.hpp"

#include "json.hpp"

namespace semimpc {

using Json = nlohmann::json;

Json to_json(const ModelParams& params);
ModelParams params_from_json(const Json& j);

Json to_json(const Violation& v);
Violation violation_from_json(const Json& j);

/// {"model", "params", "rounds", "aborted", "violations", "per_round",
///  "outputs", "space_high_water", "input_words"}
Json to_json(const RunResult& run);
/// Inverse of to_json(RunResult). Throws std::invalid_argument (or a
/// nlohmann exception) on malformed documents.
RunResult run_result_from_json(const Json& j);

Json to_json(const Schedule& schedule);
Json to_json(const SimulationReport& report);

/// Dense n x n array of word counts.
DemandMatrix demand_from_json(const Json& j);

}  // namespace semimpc
