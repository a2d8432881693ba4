// grainsched command-line front end. Talks to the engine exclusively through
// the C API in grainsched.h; all heavy lifting lives in the shared library.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grainsched.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

int map_status(int status) {
  if (status == GRAIN_OK) return kExitOk;
  if (status == GRAIN_ERR_CONFIG) return kExitConfig;
  return kExitInternal;
}

int report_failure(int status) {
  std::fprintf(stderr, "error: %s\n", grain_last_error());
  return map_status(status);
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

struct ScenarioHandle {
  grain_scenario* ptr = nullptr;
  ~ScenarioHandle() { grain_scenario_destroy(ptr); }
};

// A scenario argument is a file path if such a file exists, otherwise a
// preset id (optionally "<preset>:<mode>"), otherwise, when --preset was
// given, a bare mode name joined onto that preset.
int open_scenario(const std::string& arg, const std::string& preset_hint, grain_scenario** out) {
  if (std::filesystem::exists(arg)) return grain_scenario_load(arg.c_str(), out);
  int status = grain_scenario_preset(arg.c_str(), out);
  if (status != GRAIN_OK && !preset_hint.empty() && arg.find(':') == std::string::npos) {
    const std::string joined = preset_hint + ":" + arg;
    status = grain_scenario_preset(joined.c_str(), out);
  }
  return status;
}

int cmd_simulate(const std::string& scenario_arg, const std::string& params_path,
                 std::uint64_t seed, const std::string& out_dir, const std::string& format) {
  if (format != "json" && format != "csv") {
    std::fprintf(stderr, "error: unknown format '%s' (expected json or csv)\n", format.c_str());
    return kExitConfig;
  }

  ScenarioHandle scenario;
  int status = open_scenario(scenario_arg, "", &scenario.ptr);
  if (status != GRAIN_OK) return report_failure(status);
  if (!params_path.empty()) {
    status = grain_scenario_set_params_file(scenario.ptr, params_path.c_str());
    if (status != GRAIN_OK) return report_failure(status);
  }

  grain_report* report = nullptr;
  status = grain_simulate(scenario.ptr, seed, &report);
  if (status != GRAIN_OK) return report_failure(status);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory '%s'\n", out_dir.c_str());
    grain_report_destroy(report);
    return kExitConfig;
  }

  const char* text = nullptr;
  bool ok = true;
  if (format == "json") {
    ok = ok && grain_report_json(report, &text) == GRAIN_OK &&
         write_file(out_dir + "/report.json", text);
  } else {
    ok = ok && grain_report_csv(report, &text) == GRAIN_OK &&
         write_file(out_dir + "/report.csv", text);
  }
  ok = ok && grain_report_trace(report, &text) == GRAIN_OK &&
       write_file(out_dir + "/trace.log", text);
  ok = ok && grain_report_gantt_csv(report, &text) == GRAIN_OK &&
       write_file(out_dir + "/gantt.csv", text);
  if (!ok) {
    std::fprintf(stderr, "error: failed writing outputs to '%s'\n", out_dir.c_str());
    grain_report_destroy(report);
    return kExitInternal;
  }

  const char* name = nullptr;
  grain_scenario_name(scenario.ptr, &name);
  size_t jobs = 0;
  double response = 0.0;
  double makespan = 0.0;
  grain_report_job_count(report, &jobs);
  grain_report_metrics(report, &response, &makespan);
  std::printf("scenario: %s\nseed: %llu\njobs: %zu\n", name ? name : "?",
              static_cast<unsigned long long>(seed), jobs);
  std::printf("overall_response_s: %.3f\nmakespan_s: %.3f\n", response, makespan);
  std::printf("outputs: %s/report.%s %s/trace.log %s/gantt.csv\n", out_dir.c_str(),
              format.c_str(), out_dir.c_str(), out_dir.c_str());

  grain_report_destroy(report);
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& scenario_args, const std::string& preset_hint,
                std::vector<std::uint64_t> seeds, std::string baseline,
                const std::string& out_dir) {
  if (seeds.empty()) seeds.push_back(1);

  std::vector<ScenarioHandle> handles(scenario_args.size());
  std::vector<const grain_scenario*> ptrs;
  for (size_t i = 0; i < scenario_args.size(); ++i) {
    int status = open_scenario(scenario_args[i], preset_hint, &handles[i].ptr);
    if (status != GRAIN_OK) return report_failure(status);
    ptrs.push_back(handles[i].ptr);
  }
  if (baseline.empty() && !handles.empty()) {
    const char* name = nullptr;
    if (grain_scenario_name(handles.front().ptr, &name) == GRAIN_OK) baseline = name;
  }

  grain_compare* table = nullptr;
  int status = grain_compare_run(ptrs.data(), ptrs.size(), seeds.data(), seeds.size(),
                                 baseline.c_str(), &table);
  if (status != GRAIN_OK) return report_failure(status);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const char* csv = nullptr;
  const char* json = nullptr;
  bool ok = !ec && grain_compare_csv(table, &csv) == GRAIN_OK &&
            grain_compare_json(table, &json) == GRAIN_OK &&
            write_file(out_dir + "/compare.csv", csv) &&
            write_file(out_dir + "/compare.json", json);
  if (!ok) {
    std::fprintf(stderr, "error: failed writing outputs to '%s'\n", out_dir.c_str());
    grain_compare_destroy(table);
    return kExitInternal;
  }
  std::fputs(csv, stdout);
  grain_compare_destroy(table);
  return kExitOk;
}

int cmd_calibrate(const std::string& targets_path, const std::string& space_path,
                  std::uint64_t budget, std::uint64_t seed, const std::string& out_dir) {
  grain_calibration* calibration = nullptr;
  int status = grain_calibrate(targets_path.c_str(), space_path.c_str(), budget, seed,
                               &calibration);
  if (status != GRAIN_OK) return report_failure(status);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const char* params = nullptr;
  const char* report = nullptr;
  bool ok = !ec && grain_calibration_params_json(calibration, &params) == GRAIN_OK &&
            grain_calibration_report_json(calibration, &report) == GRAIN_OK &&
            write_file(out_dir + "/params.json", params) &&
            write_file(out_dir + "/calibration.json", report);
  if (!ok) {
    std::fprintf(stderr, "error: failed writing outputs to '%s'\n", out_dir.c_str());
    grain_calibration_destroy(calibration);
    return kExitInternal;
  }

  int within = 0;
  grain_calibration_within_tolerance(calibration, &within);
  std::fputs(report, stdout);
  if (!within) {
    std::fprintf(stderr, "warning: calibration missed at least one target tolerance\n");
  }
  grain_calibration_destroy(calibration);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grainsched: deterministic fine-grained cluster-scheduling simulator"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run one scenario and write reports");
  std::string sim_scenario;
  std::string sim_preset;
  std::string sim_params;
  std::string sim_out = "out";
  std::string sim_format = "json";
  std::uint64_t sim_seed = 1;
  simulate->add_option("--scenario", sim_scenario, "scenario file path or preset id");
  simulate->add_option("--preset", sim_preset, "preset id (exp1|exp2|exp3[:MODE])");
  simulate->add_option("--params", sim_params, "perf params JSON file overriding the scenario");
  simulate->add_option("--seed", sim_seed, "simulation seed");
  simulate->add_option("--out", sim_out, "output directory");
  simulate->add_option("--format", sim_format, "report format: json or csv");

  // compare
  auto* compare = app.add_subcommand("compare", "run several scenarios over shared arrivals");
  std::vector<std::string> cmp_scenarios;
  std::string cmp_preset;
  std::vector<std::uint64_t> cmp_seeds;
  std::string cmp_baseline;
  std::string cmp_out = "out";
  compare->add_option("--scenario", cmp_scenarios,
                      "scenario file, preset id, or mode name (repeatable)");
  compare->add_option("--preset", cmp_preset, "preset joined onto bare mode names");
  compare->add_option("--seed", cmp_seeds, "seed (repeatable)");
  compare->add_option("--baseline", cmp_baseline, "baseline scenario name for deltas");
  compare->add_option("--out", cmp_out, "output directory");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "search perf params against ratio targets");
  std::string cal_targets;
  std::string cal_space;
  std::uint64_t cal_budget = 2000;
  std::uint64_t cal_seed = 1;
  std::string cal_out = "out";
  calibrate->add_option("--targets", cal_targets, "calibration targets JSON file")->required();
  calibrate->add_option("--params", cal_space, "parameter space JSON file")->required();
  calibrate->add_option("--budget", cal_budget, "number of sampled parameter sets");
  calibrate->add_option("--seed", cal_seed, "search seed");
  calibrate->add_option("--out", cal_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (simulate->parsed()) {
    if (sim_scenario.empty() == sim_preset.empty()) {
      std::fprintf(stderr, "error: give exactly one of --scenario or --preset\n");
      return kExitConfig;
    }
    return cmd_simulate(sim_scenario.empty() ? sim_preset : sim_scenario, sim_params, sim_seed,
                        sim_out, sim_format);
  }
  if (compare->parsed()) {
    if (cmp_scenarios.size() < 2) {
      std::fprintf(stderr, "error: compare needs at least two --scenario entries\n");
      return kExitConfig;
    }
    return cmd_compare(cmp_scenarios, cmp_preset, cmp_seeds, cmp_baseline, cmp_out);
  }
  if (calibrate->parsed()) {
    return cmd_calibrate(cal_targets, cal_space, cal_budget, cal_seed, cal_out);
  }
  return kExitConfig;
}
