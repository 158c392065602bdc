#pragma once
#include "rr/geometry.hpp"

#include <json.hpp>

#include <string>

namespace rr {

// {"h31":…, "h42":…, "h21":…, "h12":…, "h32":{"re":…, "im":…}, "h41":{…}, "P1":…, "P2":…};
// complex gains may also be plain numbers. Throws std::invalid_argument on a bad document.
GaussianScenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GaussianScenario& s);
PowerSplit split_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PowerSplit& p);
nlohmann::json to_json(const RegionMetrics& m);

// Header `R1,R2`, one vertex per line, counter-clockwise.
std::string frontier_csv(const RatePolygon& p);
// Vertices with their provenance split, plus metrics.
nlohmann::json frontier_json(const RatePolygon& p);

}  // namespace rr
