#include "grainsched/controller.hpp"

#include "grainsched/errors.hpp"

namespace grainsched {

const PodSpec& PodSet::find_pod(const std::string& pod_id) const {
  if (launcher.pod_id == pod_id) return launcher;
  for (const auto& w : workers) {
    if (w.pod_id == pod_id) return w;
  }
  throw InternalError("pod '" + pod_id + "' not in pod set of job " + job_id);
}

std::vector<int> allocate_tasks(int n_tasks, int n_workers) {
  if (n_workers < 1) {
    throw ConfigError("allocate_tasks: n_workers must be >= 1, got " + std::to_string(n_workers));
  }
  if (n_tasks < 1) {
    throw ConfigError("allocate_tasks: n_tasks must be >= 1, got " + std::to_string(n_tasks));
  }
  std::vector<int> out(static_cast<size_t>(n_workers), n_tasks / n_workers);
  for (int i = 0; i < n_tasks % n_workers; ++i) out[static_cast<size_t>(i)] += 1;
  return out;
}

PodSet build_pod_set(const JobSpec& job, const GranularityPlan& plan) {
  job.validate();
  if (plan.n_workers < 1 || plan.n_groups < 1 || plan.n_nodes < 1) {
    throw ConfigError("job " + job.job_id + ": granularity plan components must be >= 1");
  }

  PodSet set;
  set.job_id = job.job_id;
  set.n_total_tasks = job.n_tasks;

  set.launcher.pod_id = job.job_id + "-launcher";
  set.launcher.job_id = job.job_id;
  set.launcher.role = PodRole::Launcher;
  set.launcher.worker_index = -1;
  set.launcher.n_tasks_in_pod = 0;
  set.launcher.resources = {0, 0};

  const std::vector<int> tasks = allocate_tasks(job.n_tasks, plan.n_workers);
  std::string hostfile;
  for (int i = 0; i < plan.n_workers; ++i) {
    int n = tasks[static_cast<size_t>(i)];
    // A worker with no tasks would be an idle container; it is not created
    // and does not appear in the hostfile.
    if (n == 0) continue;
    PodSpec w;
    w.pod_id = job.job_id + "-worker-" + std::to_string(i);
    w.job_id = job.job_id;
    w.role = PodRole::Worker;
    w.worker_index = i;
    w.n_tasks_in_pod = n;
    w.resources = resource_scale(job.total_resources, n, job.n_tasks);
    hostfile += w.pod_id + " slots=" + std::to_string(n) + "\n";
    set.workers.push_back(std::move(w));
  }
  set.hostfile_text = std::move(hostfile);
  return set;
}

}  // namespace grainsched
