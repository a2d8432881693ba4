#include "grainsched.h"

#include <exception>
#include <string>
#include <vector>

#include "grainsched/calibrate.hpp"
#include "grainsched/compare.hpp"
#include "grainsched/engine.hpp"
#include "grainsched/errors.hpp"
#include "grainsched/report_io.hpp"
#include "grainsched/scenario_io.hpp"
#include "grainsched/workload.hpp"

using namespace grainsched;

// Handle bodies: the C structs own every string handed across the boundary.
struct grain_scenario {
  ScenarioSpec spec;
  std::string name;
};

struct grain_report {
  SimReport report;
  std::string json_text;
  std::string csv_text;
  std::string trace;
  std::string gantt;
};

struct grain_compare {
  CompareTable table;
  std::string csv_text;
  std::string json_text;
};

struct grain_calibration {
  CalibrationResult result;
  std::string params_json;
  std::string report_json;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const std::string& message) {
  t_last_error = message;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return GRAIN_OK;
  } catch (const ConfigError& e) {
    return fail(GRAIN_ERR_CONFIG, e.what());
  } catch (const InternalError& e) {
    return fail(GRAIN_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(GRAIN_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* grain_last_error(void) { return t_last_error.c_str(); }

const char* grain_version(void) { return "grainsched 1.0.0"; }

int grain_scenario_preset(const char* id, grain_scenario** out) {
  if (!id || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<grain_scenario>();
    handle->spec = scenario_preset(id);
    *out = handle.release();
  });
}

int grain_scenario_load(const char* path, grain_scenario** out) {
  if (!path || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<grain_scenario>();
    handle->spec = load_scenario_file(path);
    *out = handle.release();
  });
}

int grain_scenario_parse(const char* json_text, grain_scenario** out) {
  if (!json_text || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<grain_scenario>();
    handle->spec = parse_scenario_json(parse_json_text(json_text, "scenario"));
    *out = handle.release();
  });
}

int grain_scenario_set_params_file(grain_scenario* scenario, const char* path) {
  if (!scenario || !path) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    scenario->spec.perf = load_perf_params_file(path);
    scenario->spec.validate();
  });
}

int grain_scenario_name(const grain_scenario* scenario, const char** out) {
  if (!scenario || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    const_cast<grain_scenario*>(scenario)->name = scenario->spec.name;
    *out = scenario->name.c_str();
  });
}

void grain_scenario_destroy(grain_scenario* scenario) { delete scenario; }

int grain_simulate(const grain_scenario* scenario, uint64_t seed, grain_report** out) {
  if (!scenario || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<grain_report>();
    handle->report = run_simulation(scenario->spec, seed);
    *out = handle.release();
  });
}

int grain_report_metrics(const grain_report* report, double* overall_response_s,
                         double* makespan_s) {
  if (!report) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    if (overall_response_s) *overall_response_s = to_double(report->report.overall_response_s);
    if (makespan_s) *makespan_s = to_double(report->report.makespan_s);
  });
}

int grain_report_job_count(const grain_report* report, size_t* out) {
  if (!report || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = report->report.records.size(); });
}

int grain_report_json(const grain_report* report, const char** out) {
  if (!report || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto* mutable_report = const_cast<grain_report*>(report);
    if (mutable_report->json_text.empty()) {
      mutable_report->json_text = report_json_text(report->report);
    }
    *out = mutable_report->json_text.c_str();
  });
}

int grain_report_csv(const grain_report* report, const char** out) {
  if (!report || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto* mutable_report = const_cast<grain_report*>(report);
    if (mutable_report->csv_text.empty()) {
      mutable_report->csv_text = report_csv_text(report->report);
    }
    *out = mutable_report->csv_text.c_str();
  });
}

int grain_report_trace(const grain_report* report, const char** out) {
  if (!report || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto* mutable_report = const_cast<grain_report*>(report);
    if (mutable_report->trace.empty()) {
      mutable_report->trace = trace_text(report->report);
    }
    *out = mutable_report->trace.c_str();
  });
}

int grain_report_gantt_csv(const grain_report* report, const char** out) {
  if (!report || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    auto* mutable_report = const_cast<grain_report*>(report);
    if (mutable_report->gantt.empty()) {
      mutable_report->gantt = gantt_csv_text(report->report);
    }
    *out = mutable_report->gantt.c_str();
  });
}

void grain_report_destroy(grain_report* report) { delete report; }

int grain_compare_run(const grain_scenario* const* scenarios, size_t n_scenarios,
                      const uint64_t* seeds, size_t n_seeds, const char* baseline,
                      grain_compare** out) {
  if (!scenarios || !seeds || !baseline || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  for (size_t i = 0; i < n_scenarios; ++i) {
    if (!scenarios[i]) return fail(GRAIN_ERR_BAD_ARG, "null scenario handle");
  }
  return guarded([&] {
    std::vector<ScenarioSpec> specs;
    specs.reserve(n_scenarios);
    for (size_t i = 0; i < n_scenarios; ++i) specs.push_back(scenarios[i]->spec);
    std::vector<std::uint64_t> seed_list(seeds, seeds + n_seeds);
    auto handle = std::make_unique<grain_compare>();
    handle->table = run_compare(specs, seed_list, baseline);
    handle->csv_text = compare_csv_text(handle->table);
    handle->json_text = compare_to_json(handle->table).dump(2) + "\n";
    *out = handle.release();
  });
}

int grain_compare_csv(const grain_compare* table, const char** out) {
  if (!table || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = table->csv_text.c_str(); });
}

int grain_compare_json(const grain_compare* table, const char** out) {
  if (!table || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = table->json_text.c_str(); });
}

void grain_compare_destroy(grain_compare* table) { delete table; }

int grain_calibrate(const char* targets_path, const char* space_path, uint64_t budget,
                    uint64_t seed, grain_calibration** out) {
  if (!targets_path || !space_path || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] {
    CalibrationSpec spec = load_calibration_targets_file(targets_path);
    ParamSpace space = load_param_space_file(space_path);
    auto handle = std::make_unique<grain_calibration>();
    handle->result = run_calibration(spec, space, budget, seed);
    handle->params_json = perf_params_to_json(handle->result.best).dump(2) + "\n";
    handle->report_json = calibration_report_json(handle->result).dump(2) + "\n";
    *out = handle.release();
  });
}

int grain_calibration_within_tolerance(const grain_calibration* calibration, int* out) {
  if (!calibration || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = calibration->result.all_within_tolerance ? 1 : 0; });
}

int grain_calibration_params_json(const grain_calibration* calibration, const char** out) {
  if (!calibration || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = calibration->params_json.c_str(); });
}

int grain_calibration_report_json(const grain_calibration* calibration, const char** out) {
  if (!calibration || !out) return fail(GRAIN_ERR_BAD_ARG, "null argument");
  return guarded([&] { *out = calibration->report_json.c_str(); });
}

void grain_calibration_destroy(grain_calibration* calibration) { delete calibration; }

}  // extern "C"
