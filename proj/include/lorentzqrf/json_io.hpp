#pragma once

#include <json.hpp>
#include <string>

#include "lorentzqrf/coordqrf.hpp"
#include "lorentzqrf/measure.hpp"
#include "lorentzqrf/qrf.hpp"
#include "lorentzqrf/report.hpp"

namespace lqrf::io {

using Json = nlohmann::ordered_json;

// Deterministic text: insertion-ordered keys, doubles as %.17g, non-finite as null.
// indent <= 0 gives compact single-line output.
std::string emit(const Json& j, int indent = 2);

Json to_json(const ScenarioReport& r);
Json to_json(const measure::ProbabilityReport& r);
Json to_json(const rqstate::RapidityState& s);
Json to_json(const qrf::BranchedFrameState& s);
Json to_json(const coordqrf::JointCoordinateState& s);

rqstate::RapidityState state_from_json(const Json& j);
coordqrf::JointCoordinateState coordinate_state_from_json(const Json& j);

}  // namespace lqrf::io
