#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "grainsched/perf_model.hpp"
#include "grainsched/rational.hpp"

namespace grainsched {

// One ratio constraint: how much better `candidate` should be than
// `baseline` on a metric. metric is "overall_response", "makespan" or
// "benchmark_run:<name>". improvement 0.35 means 35% lower.
struct CalibrationTarget {
  std::string metric;
  std::string candidate;
  std::string baseline;
  Rational improvement;
  Rational tolerance;
};

struct CalibrationSpec {
  std::string workload = "exp2";  // preset whose arrivals all scenarios share
  std::vector<std::uint64_t> seeds;
  std::vector<CalibrationTarget> targets;
};

// Closed search box per parameter, keyed by PerfParams field path, e.g.
// "alpha_net_network" or "beta_mig.cpu".
struct ParamSpace {
  std::map<std::string, std::pair<Rational, Rational>> ranges;
};

struct TargetResidual {
  CalibrationTarget target;
  Rational achieved;   // (baseline - candidate) / baseline on the metric means
  Rational residual;   // achieved - target improvement
  bool within_tolerance = false;
};

struct CalibrationResult {
  PerfParams best;
  Rational objective;  // sum of squared residuals
  std::vector<TargetResidual> residuals;
  bool all_within_tolerance = false;
  std::uint64_t samples_evaluated = 0;
};

CalibrationSpec parse_calibration_targets(const nlohmann::json& j);
CalibrationSpec load_calibration_targets_file(const std::string& path);
ParamSpace parse_param_space(const nlohmann::json& j);
ParamSpace load_param_space_file(const std::string& path);

// Applies one sampled value onto the params; unknown keys are config errors.
void set_perf_param(PerfParams& params, const std::string& key, const Rational& value);

// Seeded random search: `budget` samples from the box, objective = sum of
// squared residuals over all targets, ties broken by earliest sample.
CalibrationResult run_calibration(const CalibrationSpec& spec, const ParamSpace& space,
                                  std::uint64_t budget, std::uint64_t search_seed);

nlohmann::ordered_json calibration_report_json(const CalibrationResult& result);

}  // namespace grainsched
