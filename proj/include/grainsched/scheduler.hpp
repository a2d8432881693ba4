#pragma once

#include <deque>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grainsched/allocator.hpp"
#include "grainsched/cluster.hpp"
#include "grainsched/controller.hpp"

namespace grainsched {

// Whether the predicate must also find whole free exclusive CPUs for the pod.
enum class CpuPolicy { SharedCpus, StaticExclusive };

CpuPolicy cpu_policy_from_kubelet(const KubeletPolicy& policy);

enum class SchedulerMode { Baseline, TaskGroup };

std::string scheduler_mode_name(SchedulerMode m);
SchedulerMode scheduler_mode_from_name(const std::string& name);

// A set of one job's workers meant to share a node, with anti-affinity
// toward every other group in the cluster.
struct TaskGroup {
  int group_id = 0;
  std::string job_id;
  std::vector<std::string> members;          // worker pod_ids in append order
  ResourceQuantity total_request;
  std::multiset<std::string> bound_nodes;    // one entry per already-bound member
};

// Gang result: either a placement for every pod of the job or a reason the
// job must keep waiting. Partial placements never escape.
struct SchedulingOutcome {
  struct PodPlacement {
    std::string pod_id;
    std::string node_id;
    int group_id = -1;
    int n_tasks = 0;
    CpuAssignment assignment;  // filled when the placement is committed
  };

  bool scheduled = false;
  std::string reason;
  std::vector<PodPlacement> placements;  // launcher first, then workers in binding order
};

// Deals workers (in worker_index order) onto the group with the smallest
// total_request so far; ties go to the lowest group_id.
std::vector<TaskGroup> build_groups(int n_groups, const std::vector<PodSpec>& workers,
                                    const std::string& job_id = "");

// Scheduling order: group 0's members, then group 1's, and so on.
std::vector<std::string> worker_order(const std::vector<TaskGroup>& groups);

// Capacity filter. Under StaticExclusive the pod additionally needs whole
// free CPUs (fractional requests never pass).
bool predicate(const PodSpec& pod, const NodeState& node, CpuPolicy cpu_policy);

// Affinity score for placing a member of `group` on `node`:
//   + members of this group already bound here
//   + members of this group not yet bound anywhere
//   - other (job, group) pairs with at least one worker here.
// `extra_groups_on_node` carries tentative placements from the current pass.
int node_score(const TaskGroup& group, const NodeState& node,
               const std::set<std::pair<std::string, int>>& extra_groups_on_node = {});

// Plans a whole job with group affinity; pure with respect to the cluster.
SchedulingOutcome schedule_job_taskgroup(const PodSet& pod_set, const GranularityPlan& plan,
                                         const ClusterState& cluster, CpuPolicy cpu_policy);

// Least-requested spreading with rng tie-breaks; used by the baseline
// scenarios where the scheduler has no group awareness.
SchedulingOutcome schedule_job_baseline(const PodSet& pod_set, const ClusterState& cluster,
                                        CpuPolicy cpu_policy, std::mt19937_64& rng);

// One job waiting in the FIFO queue, with its precomputed plan and pods.
struct PendingJob {
  JobSpec job;
  GranularityPlan plan;
  PodSet pods;
};

// Strict FIFO gang admission: admits (and commits via admit_pod) jobs from
// the head until one cannot be placed; that head blocks the queue. Returns
// one entry per admitted job plus, if the queue blocked, the head's
// unschedulable outcome.
std::vector<std::pair<std::string, SchedulingOutcome>> gang_admit(std::deque<PendingJob>& pending,
                                                                  ClusterState& cluster,
                                                                  SchedulerMode mode,
                                                                  const KubeletPolicy& kubelet,
                                                                  std::mt19937_64& rng);

}  // namespace grainsched
