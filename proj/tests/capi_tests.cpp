// Exercises the shared library exactly as an external client would: through
// grainsched.h only, with no access to the C++ internals.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "grainsched.h"

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  REQUIRE(grain_version() != nullptr);
  CHECK(std::string(grain_version()).find("grainsched") != std::string::npos);
  REQUIRE(grain_last_error() != nullptr);
}

TEST_CASE("scenario handles round-trip their name and reject bad input") {
  grain_scenario* s = nullptr;
  REQUIRE(grain_scenario_preset("exp2:CM_G_TG", &s) == GRAIN_OK);
  REQUIRE(s != nullptr);
  const char* name = nullptr;
  REQUIRE(grain_scenario_name(s, &name) == GRAIN_OK);
  CHECK(std::string(name) == "CM_G_TG");  // presets are named for their mode row
  grain_scenario_destroy(s);

  grain_scenario* sentinel = reinterpret_cast<grain_scenario*>(0x1);
  grain_scenario* out = sentinel;
  CHECK(grain_scenario_preset("exp9", &out) == GRAIN_ERR_CONFIG);
  CHECK(out == sentinel);  // out-pointers are written only on success
  CHECK(std::string(grain_last_error()).find("exp9") != std::string::npos);

  CHECK(grain_scenario_preset(nullptr, &out) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_scenario_preset("exp1", nullptr) == GRAIN_ERR_BAD_ARG);
}

TEST_CASE("scenarios parse from memory and from disk") {
  grain_scenario* s = nullptr;
  REQUIRE(grain_scenario_parse(R"({"mode": "CM", "workload": {"preset": "exp1"}})", &s) ==
          GRAIN_OK);
  const char* name = nullptr;
  REQUIRE(grain_scenario_name(s, &name) == GRAIN_OK);
  CHECK(std::string(name) == "CM");
  grain_scenario_destroy(s);

  CHECK(grain_scenario_parse("{oops", &s) == GRAIN_ERR_CONFIG);
  CHECK(std::string(grain_last_error()).find("invalid JSON") != std::string::npos);

  const auto path = write_temp("grain-capi-scenario.json",
                               R"({"name": "disk", "mode": "NONE",
                                   "workload": {"preset": "exp1"}})");
  grain_scenario* from_disk = nullptr;
  REQUIRE(grain_scenario_load(path.string().c_str(), &from_disk) == GRAIN_OK);
  REQUIRE(grain_scenario_name(from_disk, &name) == GRAIN_OK);
  CHECK(std::string(name) == "disk");
  grain_scenario_destroy(from_disk);
  std::filesystem::remove(path);

  CHECK(grain_scenario_load("/no/such/file.json", &s) == GRAIN_ERR_CONFIG);
  CHECK(std::string(grain_last_error()).find("/no/such/file.json") != std::string::npos);
}

TEST_CASE("simulation output bytes are identical for a fixed scenario and seed") {
  grain_scenario* s = nullptr;
  REQUIRE(grain_scenario_preset("exp2:CM_G_TG", &s) == GRAIN_OK);

  grain_report* a = nullptr;
  grain_report* b = nullptr;
  REQUIRE(grain_simulate(s, 7, &a) == GRAIN_OK);
  REQUIRE(grain_simulate(s, 7, &b) == GRAIN_OK);

  size_t jobs_a = 0;
  size_t jobs_b = 0;
  REQUIRE(grain_report_job_count(a, &jobs_a) == GRAIN_OK);
  REQUIRE(grain_report_job_count(b, &jobs_b) == GRAIN_OK);
  CHECK(jobs_a == 20);
  CHECK(jobs_a == jobs_b);

  double resp_a = 0, make_a = 0, resp_b = 0, make_b = 0;
  REQUIRE(grain_report_metrics(a, &resp_a, &make_a) == GRAIN_OK);
  REQUIRE(grain_report_metrics(b, &resp_b, &make_b) == GRAIN_OK);
  CHECK(resp_a == resp_b);
  CHECK(make_a == make_b);
  CHECK(resp_a > 0);
  CHECK(make_a > 0);

  const char* ja = nullptr;
  const char* jb = nullptr;
  REQUIRE(grain_report_json(a, &ja) == GRAIN_OK);
  REQUIRE(grain_report_json(b, &jb) == GRAIN_OK);
  CHECK(std::strcmp(ja, jb) == 0);

  const char* ca = nullptr;
  const char* cb = nullptr;
  REQUIRE(grain_report_csv(a, &ca) == GRAIN_OK);
  REQUIRE(grain_report_csv(b, &cb) == GRAIN_OK);
  CHECK(std::strcmp(ca, cb) == 0);

  const char* ta = nullptr;
  const char* tb = nullptr;
  REQUIRE(grain_report_trace(a, &ta) == GRAIN_OK);
  REQUIRE(grain_report_trace(b, &tb) == GRAIN_OK);
  CHECK(std::strcmp(ta, tb) == 0);
  const std::string first_line(ta, std::strchr(ta, '\n'));
  CHECK(first_line.rfind("t=", 0) == 0);
  CHECK(first_line.find("event=submit") != std::string::npos);

  const char* ga = nullptr;
  const char* gb = nullptr;
  REQUIRE(grain_report_gantt_csv(a, &ga) == GRAIN_OK);
  REQUIRE(grain_report_gantt_csv(b, &gb) == GRAIN_OK);
  CHECK(std::strcmp(ga, gb) == 0);

  grain_report_destroy(a);
  grain_report_destroy(b);
  grain_scenario_destroy(s);
}

TEST_CASE("replacing the performance parameters changes the outcome") {
  grain_scenario* s = nullptr;
  REQUIRE(grain_scenario_preset("exp1:NONE", &s) == GRAIN_OK);

  grain_report* before = nullptr;
  REQUIRE(grain_simulate(s, 1, &before) == GRAIN_OK);
  double resp_before = 0;
  REQUIRE(grain_report_metrics(before, &resp_before, nullptr) == GRAIN_OK);

  const auto params = write_temp("grain-capi-params.json", R"({"beta_mig": {"cpu": 0}})");
  REQUIRE(grain_scenario_set_params_file(s, params.string().c_str()) == GRAIN_OK);
  grain_report* after = nullptr;
  REQUIRE(grain_simulate(s, 1, &after) == GRAIN_OK);
  double resp_after = 0;
  REQUIRE(grain_report_metrics(after, &resp_after, nullptr) == GRAIN_OK);

  // Shared jobs pay a flat per-cpu factor; zeroing it must speed them up.
  CHECK(resp_after < resp_before);

  const auto broken = write_temp("grain-capi-params-broken.json", R"({"beta": 1})");
  CHECK(grain_scenario_set_params_file(s, broken.string().c_str()) == GRAIN_ERR_CONFIG);

  std::filesystem::remove(params);
  std::filesystem::remove(broken);
  grain_report_destroy(before);
  grain_report_destroy(after);
  grain_scenario_destroy(s);
}

TEST_CASE("comparison tables come back as CSV and JSON") {
  grain_scenario* none = nullptr;
  grain_scenario* cm = nullptr;
  REQUIRE(grain_scenario_preset("exp1:NONE", &none) == GRAIN_OK);
  REQUIRE(grain_scenario_preset("exp1:CM", &cm) == GRAIN_OK);

  const grain_scenario* scenarios[] = {none, cm};
  const uint64_t seeds[] = {1, 2};

  grain_compare* table = nullptr;
  REQUIRE(grain_compare_run(scenarios, 2, seeds, 2, "NONE", &table) == GRAIN_OK);

  const char* csv = nullptr;
  REQUIRE(grain_compare_csv(table, &csv) == GRAIN_OK);
  CHECK(std::string(csv).rfind("scenario,seed,overall_response_s,makespan_s", 0) == 0);

  const char* json_text = nullptr;
  REQUIRE(grain_compare_json(table, &json_text) == GRAIN_OK);
  CHECK(std::string(json_text).find("grainsched-compare/1") != std::string::npos);
  grain_compare_destroy(table);

  grain_compare* bad = nullptr;
  CHECK(grain_compare_run(scenarios, 2, seeds, 2, "missing", &bad) == GRAIN_ERR_CONFIG);

  const grain_scenario* with_null[] = {none, nullptr};
  CHECK(grain_compare_run(with_null, 2, seeds, 2, "NONE", &bad) == GRAIN_ERR_BAD_ARG);

  grain_scenario_destroy(none);
  grain_scenario_destroy(cm);
}

TEST_CASE("calibration runs from target and space files") {
  const auto targets = write_temp("grain-capi-targets.json", R"({
    "workload": "exp1",
    "seeds": [1],
    "targets": [{"metric": "makespan", "candidate": "NONE", "baseline": "NONE",
                 "improvement": 0, "tolerance": "0.1"}]
  })");
  const auto space = write_temp("grain-capi-space.json",
                                R"({"ranges": {"alpha_net_other": [0, "0.1"]}})");

  grain_calibration* cal = nullptr;
  REQUIRE(grain_calibrate(targets.string().c_str(), space.string().c_str(), 2, 1, &cal) ==
          GRAIN_OK);

  int within = 0;
  REQUIRE(grain_calibration_within_tolerance(cal, &within) == GRAIN_OK);
  CHECK(within == 1);

  const char* params_json = nullptr;
  REQUIRE(grain_calibration_params_json(cal, &params_json) == GRAIN_OK);
  CHECK(std::string(params_json).find("alpha_net_other") != std::string::npos);

  const char* report_json = nullptr;
  REQUIRE(grain_calibration_report_json(cal, &report_json) == GRAIN_OK);
  CHECK(std::string(report_json).find("grainsched-calibration/1") != std::string::npos);
  grain_calibration_destroy(cal);

  grain_calibration* bad = nullptr;
  CHECK(grain_calibrate("/no/such/targets.json", space.string().c_str(), 1, 1, &bad) ==
        GRAIN_ERR_CONFIG);
  CHECK(std::string(grain_last_error()).find("/no/such/targets.json") != std::string::npos);

  std::filesystem::remove(targets);
  std::filesystem::remove(space);
}

TEST_CASE("null handles and out-pointers are flagged, not followed") {
  grain_report* r = nullptr;
  CHECK(grain_simulate(nullptr, 1, &r) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_report_job_count(nullptr, nullptr) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_report_json(nullptr, nullptr) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_compare_csv(nullptr, nullptr) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_calibration_params_json(nullptr, nullptr) == GRAIN_ERR_BAD_ARG);
  CHECK(grain_scenario_set_params_file(nullptr, "x") == GRAIN_ERR_BAD_ARG);

  // Destroy tolerates NULL like free().
  grain_scenario_destroy(nullptr);
  grain_report_destroy(nullptr);
  grain_compare_destroy(nullptr);
  grain_calibration_destroy(nullptr);
}

TEST_CASE("the error string resets after a successful call") {
  grain_scenario* s = nullptr;
  CHECK(grain_scenario_preset("bogus", &s) == GRAIN_ERR_CONFIG);
  CHECK(std::string(grain_last_error()) != "");
  REQUIRE(grain_scenario_preset("exp1", &s) == GRAIN_OK);
  CHECK(std::string(grain_last_error()) == "");
  grain_scenario_destroy(s);
}
