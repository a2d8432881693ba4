#pragma once

#include <string>

#include "grainsched/rational.hpp"
#include "grainsched/resources.hpp"

namespace grainsched {

// Dominant resource pressure of a workload; drives granularity selection and
// the slowdown model.
enum class Profile { Network, Cpu, Memory, CpuMemory };

std::string profile_name(Profile p);
Profile profile_from_name(const std::string& name);

// One MPI job as submitted: a task count plus job-wide resource totals that
// are divided evenly across tasks.
struct JobSpec {
  std::string job_id;
  std::string benchmark;  // catalog name, informational
  int n_tasks = 0;
  ResourceQuantity total_resources;
  Profile profile = Profile::Cpu;
  Rational submit_time_s = 0;
  Rational base_runtime_s = 0;                // contention-free duration
  Rational per_process_bandwidth_gbps = 0;    // memory traffic demand per task
  int default_n_workers = 1;                  // worker count when no granularity policy applies

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Output of granularity selection: how many nodes to span, how many worker
// pods to create, and how many placement groups to form.
struct GranularityPlan {
  int n_nodes = 1;
  int n_workers = 1;
  int n_groups = 1;

  bool operator==(const GranularityPlan&) const = default;
};

enum class PodRole { Launcher, Worker };

// One pod of a job. The launcher requests zero resources; workers carry an
// even share of the job totals.
struct PodSpec {
  std::string pod_id;
  std::string job_id;
  PodRole role = PodRole::Worker;
  int worker_index = -1;  // -1 for the launcher
  int n_tasks_in_pod = 0;
  ResourceQuantity resources;
};

}  // namespace grainsched
