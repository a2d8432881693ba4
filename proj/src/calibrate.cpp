#include "grainsched/calibrate.hpp"

#include <random>
#include <set>

#include "grainsched/engine.hpp"
#include "grainsched/errors.hpp"
#include "grainsched/log.hpp"
#include "grainsched/scenario_io.hpp"
#include "grainsched/workload.hpp"

namespace grainsched {

namespace {

// Mean metrics of one scenario over the calibration seeds.
struct ScenarioMetrics {
  Rational overall_response_s;
  Rational makespan_s;
  std::map<std::string, Rational> mean_run_s;
};

ScenarioMetrics evaluate_scenario(const std::string& workload, const std::string& mode,
                                  const PerfParams& params,
                                  const std::vector<std::uint64_t>& seeds) {
  ScenarioSpec scenario = scenario_preset(workload + ":" + mode);
  scenario.perf = params;
  ScenarioMetrics m;
  std::map<std::string, std::pair<Rational, int>> run_acc;
  for (std::uint64_t seed : seeds) {
    SimReport report = run_simulation(scenario, seed);
    m.overall_response_s += report.overall_response_s;
    m.makespan_s += report.makespan_s;
    std::map<std::string, std::pair<Rational, int>> per_seed;
    for (const auto& r : report.records) {
      auto& [sum, n] = per_seed[r.benchmark];
      sum += r.run_s();
      n += 1;
    }
    for (const auto& [name, sn] : per_seed) {
      auto& [sum, n] = run_acc[name];
      sum += sn.first / Rational(sn.second);
      n += 1;
    }
  }
  const Rational n_seeds(static_cast<int>(seeds.size()));
  m.overall_response_s /= n_seeds;
  m.makespan_s /= n_seeds;
  for (const auto& [name, sn] : run_acc) m.mean_run_s[name] = sn.first / Rational(sn.second);
  return m;
}

Rational metric_value(const ScenarioMetrics& m, const std::string& metric) {
  if (metric == "overall_response") return m.overall_response_s;
  if (metric == "makespan") return m.makespan_s;
  const std::string prefix = "benchmark_run:";
  if (metric.rfind(prefix, 0) == 0) {
    const std::string name = metric.substr(prefix.size());
    auto it = m.mean_run_s.find(name);
    if (it == m.mean_run_s.end()) {
      throw ConfigError("calibration metric references benchmark '" + name +
                        "' absent from the workload");
    }
    return it->second;
  }
  throw ConfigError("unknown calibration metric '" + metric +
                    "' (expected overall_response, makespan or benchmark_run:<name>)");
}

// Lazily evaluated per-candidate cache so a bad candidate can be rejected
// before paying for every scenario.
class CandidateEvaluator {
 public:
  CandidateEvaluator(const CalibrationSpec& spec, const PerfParams& params)
      : spec_(spec), params_(params) {}

  const ScenarioMetrics& metrics(const std::string& mode) {
    auto it = cache_.find(mode);
    if (it == cache_.end()) {
      it = cache_.emplace(mode, evaluate_scenario(spec_.workload, mode, params_, spec_.seeds))
               .first;
    }
    return it->second;
  }

  TargetResidual residual(const CalibrationTarget& target) {
    const Rational base = metric_value(metrics(target.baseline), target.metric);
    const Rational cand = metric_value(metrics(target.candidate), target.metric);
    TargetResidual r;
    r.target = target;
    r.achieved = base == 0 ? Rational(0) : (base - cand) / base;
    r.residual = r.achieved - target.improvement;
    Rational abs_residual = r.residual < 0 ? Rational(-r.residual) : r.residual;
    r.within_tolerance = abs_residual <= target.tolerance;
    return r;
  }

 private:
  const CalibrationSpec& spec_;
  const PerfParams& params_;
  std::map<std::string, ScenarioMetrics> cache_;
};

}  // namespace

CalibrationSpec parse_calibration_targets(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("calibration targets must be a JSON object");
  CalibrationSpec spec;
  if (j.contains("workload")) {
    if (!j.at("workload").is_string()) throw ConfigError("targets.workload must be a string");
    spec.workload = j.at("workload").get<std::string>();
  }
  if (j.contains("seeds")) {
    if (!j.at("seeds").is_array()) throw ConfigError("targets.seeds must be an array");
    for (const auto& s : j.at("seeds")) {
      if (!s.is_number_unsigned() && !s.is_number_integer()) {
        throw ConfigError("targets.seeds entries must be integers");
      }
      spec.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (spec.seeds.empty()) spec.seeds = {1};
  if (!j.contains("targets") || !j.at("targets").is_array()) {
    throw ConfigError("targets.targets must be an array");
  }
  for (const auto& entry : j.at("targets")) {
    if (!entry.is_object()) throw ConfigError("targets.targets entries must be objects");
    CalibrationTarget t;
    for (const char* key : {"metric", "candidate", "baseline"}) {
      if (!entry.contains(key) || !entry.at(key).is_string()) {
        throw ConfigError(std::string("target.") + key + " must be a string");
      }
    }
    t.metric = entry.at("metric").get<std::string>();
    t.candidate = entry.at("candidate").get<std::string>();
    t.baseline = entry.at("baseline").get<std::string>();
    if (!entry.contains("improvement")) throw ConfigError("target.improvement is required");
    t.improvement = json_to_rational(entry.at("improvement"), "target.improvement");
    t.tolerance = entry.contains("tolerance")
                      ? json_to_rational(entry.at("tolerance"), "target.tolerance")
                      : Rational(1, 10);
    if (t.tolerance < 0) throw ConfigError("target.tolerance must be >= 0");
    spec.targets.push_back(std::move(t));
  }
  if (spec.targets.empty()) throw ConfigError("calibration needs at least one target");
  return spec;
}

CalibrationSpec load_calibration_targets_file(const std::string& path) {
  return parse_calibration_targets(parse_json_text(read_text_file(path), path));
}

ParamSpace parse_param_space(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ranges") || !j.at("ranges").is_object()) {
    throw ConfigError("parameter space must be an object with a 'ranges' object");
  }
  ParamSpace space;
  for (const auto& [key, bounds] : j.at("ranges").items()) {
    if (!bounds.is_array() || bounds.size() != 2) {
      throw ConfigError("ranges." + key + " must be [lo, hi]");
    }
    Rational lo = json_to_rational(bounds.at(0), "ranges." + key + "[0]");
    Rational hi = json_to_rational(bounds.at(1), "ranges." + key + "[1]");
    if (hi < lo) throw ConfigError("ranges." + key + ": hi < lo");
    space.ranges[key] = {lo, hi};
  }
  if (space.ranges.empty()) throw ConfigError("parameter space has no ranges");
  // Validate every key against a scratch params value up front.
  PerfParams scratch = PerfParams::defaults();
  for (const auto& [key, range] : space.ranges) set_perf_param(scratch, key, range.first);
  scratch.validate();
  return space;
}

ParamSpace load_param_space_file(const std::string& path) {
  return parse_param_space(parse_json_text(read_text_file(path), path));
}

void set_perf_param(PerfParams& params, const std::string& key, const Rational& value) {
  if (key == "alpha_net_network") {
    params.alpha_net_network = value;
    return;
  }
  if (key == "alpha_net_other") {
    params.alpha_net_other = value;
    return;
  }
  if (key == "domain_bandwidth_gbps") {
    params.domain_bandwidth_gbps = value;
    return;
  }
  auto dot = key.find('.');
  if (dot != std::string::npos) {
    const std::string field = key.substr(0, dot);
    const Profile profile = profile_from_name(key.substr(dot + 1));
    if (field == "beta_mig") {
      params.beta_mig[profile] = value;
      return;
    }
    if (field == "rho_remote") {
      params.rho_remote[profile] = value;
      return;
    }
    if (field == "mem_sensitivity") {
      params.mem_sensitivity[profile] = value;
      return;
    }
  }
  throw ConfigError("unknown perf parameter '" + key + "'");
}

CalibrationResult run_calibration(const CalibrationSpec& spec, const ParamSpace& space,
                                  std::uint64_t budget, std::uint64_t search_seed) {
  if (budget < 1) throw ConfigError("calibration budget must be >= 1");
  if (spec.targets.empty()) throw ConfigError("calibration needs at least one target");

  std::mt19937_64 rng(splitmix64(search_seed ^ 0xca11b7a7e5eedULL));

  bool have_best = false;
  PerfParams best_params = PerfParams::defaults();
  Rational best_objective = 0;

  for (std::uint64_t sample = 0; sample < budget; ++sample) {
    PerfParams candidate = PerfParams::defaults();
    // Grid of 10^4+1 points per axis keeps values exact and reports tidy.
    for (const auto& [key, range] : space.ranges) {
      const Rational u(static_cast<std::int64_t>(rng() % 10001), 10000);
      set_perf_param(candidate, key, range.first + (range.second - range.first) * u);
    }

    CandidateEvaluator eval(spec, candidate);
    Rational objective = 0;
    bool aborted = false;
    for (const auto& target : spec.targets) {
      TargetResidual r = eval.residual(target);
      objective += r.residual * r.residual;
      if (have_best && objective > best_objective) {
        aborted = true;
        break;
      }
    }
    if (!aborted && (!have_best || objective < best_objective)) {
      have_best = true;
      best_objective = objective;
      best_params = candidate;
      GS_LOG_INFO("calibration sample %llu: objective %.6f",
                  static_cast<unsigned long long>(sample), to_double(objective));
    }
  }

  CalibrationResult result;
  result.best = best_params;
  result.objective = best_objective;
  result.samples_evaluated = budget;
  CandidateEvaluator eval(spec, result.best);
  result.all_within_tolerance = true;
  for (const auto& target : spec.targets) {
    TargetResidual r = eval.residual(target);
    result.all_within_tolerance = result.all_within_tolerance && r.within_tolerance;
    result.residuals.push_back(std::move(r));
  }
  return result;
}

nlohmann::ordered_json calibration_report_json(const CalibrationResult& result) {
  nlohmann::ordered_json out;
  out["schema"] = "grainsched-calibration/1";
  out["objective"] = to_double(result.objective);
  out["samples_evaluated"] = result.samples_evaluated;
  out["within_tolerance"] = result.all_within_tolerance;
  out["warning"] = result.all_within_tolerance
                       ? ""
                       : "best-effort result: some targets missed their tolerance";
  nlohmann::ordered_json targets = nlohmann::ordered_json::array();
  for (const auto& r : result.residuals) {
    nlohmann::ordered_json t;
    t["metric"] = r.target.metric;
    t["candidate"] = r.target.candidate;
    t["baseline"] = r.target.baseline;
    t["target_improvement"] = to_double(r.target.improvement);
    t["achieved_improvement"] = to_double(r.achieved);
    t["residual"] = to_double(r.residual);
    t["tolerance"] = to_double(r.target.tolerance);
    t["within_tolerance"] = r.within_tolerance;
    targets.push_back(std::move(t));
  }
  out["targets"] = std::move(targets);
  out["best_params"] = perf_params_to_json(result.best);
  return out;
}

}  // namespace grainsched
