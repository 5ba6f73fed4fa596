#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qaoa/experiments.hpp"
#include "qaoa/optimize.hpp"

// Structured-text (JSON) and comma-separated renderings of results.
// JSON keys keep insertion order so identical inputs give identical bytes.
// CSV values use four decimals.

namespace qaoa::io {

using Json = nlohmann::ordered_json;

Json to_json(const AngleSchedule& a);
Json to_json(const CensusP1& c);
Json to_json(const OptimizationResult& r);
Json to_json(const RegimeAngles& r);
Json to_json(const RegimeOptions& o);
Json to_json(const LocalSearchOptions& o);
Json to_json(const ConcentrationReport& r);
Json to_json(const CorrelationExperiment& r);
Json to_json(const TransferReport& r);
Json to_json(const std::vector<LeapfrogStage>& stages);

std::string to_csv(const ConcentrationReport& r);
std::string to_csv(const CorrelationExperiment& r);
std::string to_csv(const TransferReport& r);
std::string to_csv(const std::vector<LeapfrogStage>& stages);
/// resolution x resolution grid, one gamma row per line.
std::string landscape_csv(const std::vector<double>& grid, int resolution);

}  // namespace qaoa::io
