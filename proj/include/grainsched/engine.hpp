#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grainsched/cluster.hpp"
#include "grainsched/rational.hpp"
#include "grainsched/workload.hpp"

namespace grainsched {

// One due simulation event. At equal times completions are handled before
// arrivals so freed capacity is visible to a simultaneous submission;
// `sequence` orders events of the same kind deterministically.
struct SimEvent {
  enum class Kind { Completion, Arrival };
  Rational time_s;
  Kind kind = Kind::Arrival;
  std::int64_t sequence = 0;
  std::string job_id;

  friend bool operator<(const SimEvent& a, const SimEvent& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    if (a.kind != b.kind) return a.kind == Kind::Completion;
    return a.sequence < b.sequence;
  }
};

// Placement of one pod as finally admitted.
struct PodRecord {
  std::string pod_id;
  PodRole role = PodRole::Worker;
  std::string node_id;
  int group_id = -1;
  int n_tasks = 0;
  CpuAssignment assignment;
};

// Timing and placement of one finished job.
struct JobRecord {
  std::string job_id;
  std::string benchmark;
  Profile profile = Profile::Cpu;
  int n_tasks = 0;
  Rational submit_time_s;
  Rational start_time_s;
  Rational finish_time_s;
  std::vector<PodRecord> pods;

  Rational wait_s() const { return start_time_s - submit_time_s; }
  Rational run_s() const { return finish_time_s - start_time_s; }
  Rational response_s() const { return finish_time_s - submit_time_s; }
};

// One line of the event trace; empty fields render as "-".
struct TraceEntry {
  Rational time_s;
  std::string event;
  std::string job;
  std::string pod;
  std::string node;
  std::string detail;
};

struct SimReport {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::vector<JobRecord> records;       // sorted by (submit_time_s, job_id)
  Rational overall_response_s;          // sum of per-job response times
  Rational makespan_s;                  // last finish minus first submit
  std::vector<TraceEntry> event_trace;
};

// (overall response, makespan); every record must be complete.
std::pair<Rational, Rational> compute_metrics(const std::vector<JobRecord>& records);

SimReport run_simulation(const ScenarioSpec& scenario, std::uint64_t seed);

// Pinned placements and start times for counterfactual runs: jobs rerun
// with exactly the recorded bindings, bypassing the scheduler.
struct ReplayJob {
  std::string job_id;
  Rational start_time_s;
  std::vector<PodRecord> pods;
};

std::vector<ReplayJob> replay_plan_from_report(const SimReport& report);

// Replays `plan` (a subset of the original jobs) under the same scenario.
SimReport run_simulation_replay(const ScenarioSpec& scenario, std::uint64_t seed,
                                const std::vector<ReplayJob>& plan);

}  // namespace grainsched
