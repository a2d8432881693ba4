#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grainsched/allocator.hpp"
#include "grainsched/cluster.hpp"
#include "grainsched/perf_model.hpp"
#include "grainsched/planner.hpp"
#include "grainsched/scheduler.hpp"

namespace grainsched {

// One catalog entry a workload can instantiate jobs from.
struct BenchmarkDef {
  std::string name;
  Profile profile = Profile::Cpu;
  int n_tasks = 16;
  Rational base_runtime_s;
  Rational per_process_bandwidth_gbps;
  ResourceQuantity total_resources;
  int default_n_workers = 1;
};

// The five-benchmark catalog used by the built-in workloads. Base runtimes
// and bandwidths are calibration placeholders, not measurements.
std::vector<BenchmarkDef> default_benchmarks();

// One submission: a catalog benchmark at a point in time.
struct Arrival {
  std::string benchmark;
  Rational submit_time_s = 0;
};

// Either an explicit arrival list or a named built-in recipe resolved with
// the run seed:
//   steady: `count` jobs of `benchmark`, spaced `interval_s` apart from t=0.
//   burst-mix: `repeats` of every catalog benchmark, submit times uniform
//              over [0, window_s] at millisecond grain, shuffled order.
struct WorkloadSpec {
  std::string generator;  // "", "steady" or "burst-mix"
  std::vector<Arrival> arrivals;

  // steady knobs
  std::string benchmark = "EP-DGEMM";
  int count = 10;
  Rational interval_s = 60;

  // burst-mix knobs
  int repeats = 4;
  Rational window_s = 1200;
};

// A fully described run: cluster, policies, model parameters, workload.
struct ScenarioSpec {
  std::string name;
  ClusterConfig cluster;
  KubeletPolicy kubelet;
  GranularityPolicy planner = GranularityPolicy::None;
  SchedulerMode scheduler = SchedulerMode::Baseline;
  PerfParams perf = PerfParams::defaults();
  WorkloadSpec workload;
  std::vector<BenchmarkDef> benchmarks = default_benchmarks();

  const BenchmarkDef& find_benchmark(const std::string& name) const;
  void validate() const;
};

// Mode rows of the scenario matrix: NONE, CM, CM_S, CM_G, CM_S_TG, CM_G_TG,
// kubeflow, volcano-native. Applies kubelet/planner/scheduler settings.
void apply_mode(ScenarioSpec& scenario, const std::string& mode);
std::vector<std::string> known_modes();

// Built-in scenarios: "exp1" (10 CPU-bound jobs every 60 s) and "exp2"
// (20 mixed jobs over [0,1200] s); "exp3" shares exp2's arrivals. An id may
// carry a mode suffix, e.g. "exp2:CM_G_TG"; without one the fine-grained
// default CM_G_TG applies.
ScenarioSpec scenario_preset(const std::string& id);

// Deterministic stream splitter for deriving independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Resolves the workload into concrete, validated JobSpecs sorted by
// (submit_time_s, job_id). Job ids are "<benchmark>-<k>" with k counting
// occurrences of that benchmark in submission order.
std::vector<JobSpec> resolve_arrivals(const ScenarioSpec& scenario, std::uint64_t seed);

}  // namespace grainsched
