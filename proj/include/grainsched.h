/* grainsched C API: deterministic cluster-scheduling simulation behind
 * opaque handles. All functions return a status code; every out-pointer is
 * written only on GRAIN_OK. Returned strings stay owned by their handle and
 * remain valid until that handle is destroyed. Handles are not thread-safe;
 * distinct handles may be used from distinct threads. */
#ifndef GRAINSCHED_H
#define GRAINSCHED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values match the CLI exit codes. */
#define GRAIN_OK 0
#define GRAIN_ERR_CONFIG 2   /* invalid input: files, presets, parameters */
#define GRAIN_ERR_INTERNAL 3 /* broken invariant inside the engine */
#define GRAIN_ERR_BAD_ARG 4  /* null handle or out-pointer */

typedef struct grain_scenario grain_scenario;
typedef struct grain_report grain_report;
typedef struct grain_compare grain_compare;
typedef struct grain_calibration grain_calibration;

/* Human-readable message for the most recent failure on this thread.
 * Never returns NULL; empty string when no failure has occurred. */
const char* grain_last_error(void);

const char* grain_version(void);

/* --- scenarios ----------------------------------------------------------- */

/* Built-in ids: "exp1", "exp2", "exp3", optionally with a mode suffix such
 * as "exp2:CM_G_TG" (modes: NONE, CM, CM_S, CM_G, CM_S_TG, CM_G_TG,
 * kubeflow, volcano-native). */
int grain_scenario_preset(const char* id, grain_scenario** out);

/* Loads a scenario JSON file (schema documented in the repo README). */
int grain_scenario_load(const char* path, grain_scenario** out);

/* Parses scenario JSON from memory. */
int grain_scenario_parse(const char* json_text, grain_scenario** out);

/* Replaces the scenario's performance parameters from a params JSON file. */
int grain_scenario_set_params_file(grain_scenario* scenario, const char* path);

int grain_scenario_name(const grain_scenario* scenario, const char** out);

void grain_scenario_destroy(grain_scenario* scenario);

/* --- simulation ---------------------------------------------------------- */

int grain_simulate(const grain_scenario* scenario, uint64_t seed, grain_report** out);

int grain_report_metrics(const grain_report* report, double* overall_response_s,
                         double* makespan_s);

int grain_report_job_count(const grain_report* report, size_t* out);

/* Serialized views; bytes are stable for fixed (scenario, seed). */
int grain_report_json(const grain_report* report, const char** out);
int grain_report_csv(const grain_report* report, const char** out);
int grain_report_trace(const grain_report* report, const char** out);
int grain_report_gantt_csv(const grain_report* report, const char** out);

void grain_report_destroy(grain_report* report);

/* --- scenario comparison ------------------------------------------------- */

/* Runs every (scenario, seed) pair; scenarios must share a workload and
 * `baseline` must match one scenario's name. */
int grain_compare_run(const grain_scenario* const* scenarios, size_t n_scenarios,
                      const uint64_t* seeds, size_t n_seeds, const char* baseline,
                      grain_compare** out);

int grain_compare_csv(const grain_compare* table, const char** out);
int grain_compare_json(const grain_compare* table, const char** out);

void grain_compare_destroy(grain_compare* table);

/* --- parameter calibration ----------------------------------------------- */

/* Seeded random search over the parameter box in `space_path`, scoring the
 * ratio targets in `targets_path`. A search that misses its tolerances
 * still succeeds; inspect grain_calibration_within_tolerance. */
int grain_calibrate(const char* targets_path, const char* space_path, uint64_t budget,
                    uint64_t seed, grain_calibration** out);

int grain_calibration_within_tolerance(const grain_calibration* calibration, int* out);

/* Best parameters found, as a params-file JSON document. */
int grain_calibration_params_json(const grain_calibration* calibration, const char** out);

/* Residual report: per-target achieved ratios and tolerances. */
int grain_calibration_report_json(const grain_calibration* calibration, const char** out);

void grain_calibration_destroy(grain_calibration* calibration);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GRAINSCHED_H */
