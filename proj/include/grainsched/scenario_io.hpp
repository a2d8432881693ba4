#pragma once

#include <string>

#include <json.hpp>

#include "grainsched/perf_model.hpp"
#include "grainsched/rational.hpp"
#include "grainsched/workload.hpp"

namespace grainsched {

// Exact numeric bridge: integers convert directly; floating JSON numbers go
// through their shortest decimal rendering so "0.1" means exactly 1/10;
// strings may carry "num/den" or decimal text.
Rational json_to_rational(const nlohmann::json& value, const std::string& context);

nlohmann::json rational_to_json(const Rational& value);

// Scenario files: {name, cluster, kubelet, planner, scheduler, mode?, perf?,
// workload, benchmarks?}. A "mode" key applies a scenario-matrix row first;
// explicit kubelet/planner/scheduler keys then override it.
ScenarioSpec parse_scenario_json(const nlohmann::json& j);
ScenarioSpec load_scenario_file(const std::string& path);

// Perf parameter files use the same schema as the scenario "perf" section.
PerfParams parse_perf_params(const nlohmann::json& j, PerfParams base = PerfParams::defaults());
PerfParams load_perf_params_file(const std::string& path);
nlohmann::ordered_json perf_params_to_json(const PerfParams& params);

// Reads a whole file; ConfigError with the path on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
nlohmann::json parse_json_text(const std::string& text, const std::string& what);

}  // namespace grainsched
