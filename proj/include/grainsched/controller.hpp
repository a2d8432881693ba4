#pragma once

#include <string>
#include <vector>

#include "grainsched/job.hpp"

namespace grainsched {

// Materialized pods for one job: a zero-request launcher plus the workers
// that carry tasks, and the hostfile the launcher would spawn ranks from.
struct PodSet {
  std::string job_id;
  PodSpec launcher;
  std::vector<PodSpec> workers;  // ordered by worker_index; zero-task workers dropped
  std::string hostfile_text;
  int n_total_tasks = 0;

  const PodSpec& find_pod(const std::string& pod_id) const;
};

// Round-robin deal of n_tasks over n_workers starting at worker 0:
// result[i] = floor(n/w) + (1 if i < n mod w).
std::vector<int> allocate_tasks(int n_tasks, int n_workers);

PodSet build_pod_set(const JobSpec& job, const GranularityPlan& plan);

}  // namespace grainsched
