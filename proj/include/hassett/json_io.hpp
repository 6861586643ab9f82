#pragma once

// JSON forms of the engine's data types. Keys come out sorted and rationals
// in lowest terms, so equal values serialize to identical bytes.

#include <json.hpp>

#include "hassett/autgroup.hpp"
#include "hassett/constructions.hpp"
#include "hassett/feasibility.hpp"
#include "hassett/strata.hpp"
#include "hassett/weights.hpp"

namespace hassett::json_io {

using nlohmann::json;

/// {"genus": g, "weights": ["1/3", ...]}
json to_json(const WeightData& w);
WeightData weight_data_from_json(const json& j);

/// {"schema": "stable-tree/1", "vertices": [{"genus": 0}, ...], "edges": [[0,1]],
///  "markings": {"1": 0, ...}, "clusters": [[[1,2],[3]], ...],
///  "node_markings": {"4": 0}}   (node_markings only when non-empty)
json to_json(const StableTree& t);
StableTree stable_tree_from_json(const json& j);

json to_json(const BoundaryDivisor& d, const WeightData& w);
BoundaryDivisor boundary_divisor_from_json(const json& j);

/// {"schema": "linear-system/1", "variables": m,
///  "constraints": [{"coefficients": ["1","0"], "relation": "<=", "bound": "1"}]}
json to_json(const LinearSystem& sys);
LinearSystem linear_system_from_json(const json& j);

/// {"schema": "aut-description/1", "torus_rank", "finite_order", "finite_generators"
///  (1-based one-line images), "orbits", "label", "special", "stack_note", "provenance"}
json to_json(const AutDescription& d);
AutDescription aut_description_from_json(const json& j);

json to_json(const BlowupSchedule& s);
BlowupSchedule blowup_schedule_from_json(const json& j);

json to_json(const Classification& c);
json to_json(const KeelChainReport& r);

json rationals_to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const json& j);
json subset_to_json(Subset s);
Subset subset_from_json(const json& j);

/// {"error": {"kind": ..., "message": ...}}
json error_object(const std::string& kind, const std::string& message);

}  // namespace hassett::json_io
