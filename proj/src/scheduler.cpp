#include "grainsched/scheduler.hpp"

#include <algorithm>
#include <map>

#include "grainsched/errors.hpp"
#include "grainsched/rational.hpp"

namespace grainsched {

CpuPolicy cpu_policy_from_kubelet(const KubeletPolicy& policy) {
  return policy.cpu_manager == CpuManagerPolicy::Static ? CpuPolicy::StaticExclusive
                                                        : CpuPolicy::SharedCpus;
}

std::string scheduler_mode_name(SchedulerMode m) {
  return m == SchedulerMode::TaskGroup ? "taskgroup" : "baseline";
}

SchedulerMode scheduler_mode_from_name(const std::string& name) {
  if (name == "baseline") return SchedulerMode::Baseline;
  if (name == "taskgroup") return SchedulerMode::TaskGroup;
  throw ConfigError("unknown scheduler mode '" + name + "' (expected baseline or taskgroup)");
}

std::vector<TaskGroup> build_groups(int n_groups, const std::vector<PodSpec>& workers,
                                    const std::string& job_id) {
  if (n_groups < 1) {
    throw ConfigError("build_groups: n_groups must be >= 1, got " + std::to_string(n_groups));
  }
  if (workers.empty()) throw ConfigError("build_groups: workers must be non-empty");

  std::vector<TaskGroup> groups(static_cast<size_t>(n_groups));
  for (int g = 0; g < n_groups; ++g) {
    groups[static_cast<size_t>(g)].group_id = g;
    groups[static_cast<size_t>(g)].job_id = job_id.empty() ? workers.front().job_id : job_id;
  }
  for (const auto& w : workers) {
    // Smallest running total wins; on ties the lowest group_id, so equal
    // workers deal out round-robin and group sizes stay within one worker.
    TaskGroup* best = &groups.front();
    for (auto& g : groups) {
      auto key = [](const TaskGroup& t) {
        return std::pair<std::int64_t, std::int64_t>{t.total_request.cpu_millicores,
                                                     t.total_request.memory_bytes};
      };
      if (key(g) < key(*best)) best = &g;
    }
    best->members.push_back(w.pod_id);
    best->total_request += w.resources;
  }
  return groups;
}

std::vector<std::string> worker_order(const std::vector<TaskGroup>& groups) {
  std::vector<std::string> order;
  for (const auto& g : groups) {
    order.insert(order.end(), g.members.begin(), g.members.end());
  }
  return order;
}

namespace {

// Uncommitted claims accumulated while planning one job.
struct NodeDelta {
  ResourceQuantity alloc;
  int exclusive_reserved = 0;
};

bool predicate_with_delta(const PodSpec& pod, const NodeState& node, CpuPolicy cpu_policy,
                          const NodeDelta& delta) {
  ResourceQuantity used = node.allocated + delta.alloc;
  if (!(pod.resources + used).fits_within(node.allocatable)) return false;
  if (cpu_policy == CpuPolicy::StaticExclusive && pod.resources.cpu_millicores > 0) {
    if (pod.resources.cpu_millicores % kMillicoresPerCpu != 0) return false;
    int k = static_cast<int>(pod.resources.cpu_millicores / kMillicoresPerCpu);
    if (node.free_exclusive_cpus() - delta.exclusive_reserved < k) return false;
  }
  return true;
}

std::vector<const NodeState*> worker_nodes_sorted(const ClusterState& cluster) {
  std::vector<const NodeState*> nodes;
  for (const auto& n : cluster.nodes) {
    if (!n.control_plane) nodes.push_back(&n);
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeState* a, const NodeState* b) { return a->node_id < b->node_id; });
  return nodes;
}

// Least-requested: mean of the free fractions after placement, scaled to
// integer via floor(1000 * mean). Exact rational arithmetic, no float drift.
long least_requested_score(const PodSpec& pod, const NodeState& node, const NodeDelta& delta) {
  ResourceQuantity free_after = node.allocatable - node.allocated - delta.alloc - pod.resources;
  Rational cpu_frac = node.allocatable.cpu_millicores > 0
                          ? Rational(free_after.cpu_millicores, node.allocatable.cpu_millicores)
                          : Rational(0);
  Rational mem_frac = node.allocatable.memory_bytes > 0
                          ? Rational(free_after.memory_bytes, node.allocatable.memory_bytes)
                          : Rational(0);
  Rational score = Rational(1000) * (cpu_frac + mem_frac) / Rational(2);
  return floor_rational(score).convert_to<long>();
}

void claim(NodeDelta& delta, const PodSpec& pod, CpuPolicy cpu_policy) {
  delta.alloc += pod.resources;
  if (cpu_policy == CpuPolicy::StaticExclusive && pod.resources.cpu_millicores > 0) {
    delta.exclusive_reserved += static_cast<int>(pod.resources.cpu_millicores / kMillicoresPerCpu);
  }
}

}  // namespace

bool predicate(const PodSpec& pod, const NodeState& node, CpuPolicy cpu_policy) {
  return predicate_with_delta(pod, node, cpu_policy, {});
}

int node_score(const TaskGroup& group, const NodeState& node,
               const std::set<std::pair<std::string, int>>& extra_groups_on_node) {
  int bound_here = static_cast<int>(group.bound_nodes.count(node.node_id));
  int not_yet_bound = static_cast<int>(group.members.size() - group.bound_nodes.size());

  std::set<std::pair<std::string, int>> groups_here = node.groups_present();
  groups_here.insert(extra_groups_on_node.begin(), extra_groups_on_node.end());
  int foreign = 0;
  for (const auto& jg : groups_here) {
    if (jg.first != group.job_id || jg.second != group.group_id) ++foreign;
  }
  return bound_here + not_yet_bound - foreign;
}

SchedulingOutcome schedule_job_taskgroup(const PodSet& pod_set, const GranularityPlan& plan,
                                         const ClusterState& cluster, CpuPolicy cpu_policy) {
  std::vector<TaskGroup> groups = build_groups(plan.n_groups, pod_set.workers, pod_set.job_id);
  const std::vector<std::string> order = worker_order(groups);

  std::map<std::string, TaskGroup*> group_of_pod;
  for (auto& g : groups) {
    for (const auto& pid : g.members) group_of_pod[pid] = &g;
  }

  std::map<std::string, NodeDelta> deltas;
  std::map<std::string, std::set<std::pair<std::string, int>>> tentative_groups;
  const std::vector<const NodeState*> candidates = worker_nodes_sorted(cluster);

  SchedulingOutcome out;
  for (const auto& pod_id : order) {
    const PodSpec& pod = pod_set.find_pod(pod_id);
    TaskGroup& group = *group_of_pod.at(pod_id);

    const NodeState* chosen = nullptr;
    int chosen_score = 0;
    for (const NodeState* node : candidates) {
      if (!predicate_with_delta(pod, *node, cpu_policy, deltas[node->node_id])) continue;
      int score = node_score(group, *node, tentative_groups[node->node_id]);
      // candidates are sorted by node_id, so strict > keeps the lowest id on ties
      if (!chosen || score > chosen_score) {
        chosen = node;
        chosen_score = score;
      }
    }
    if (!chosen) {
      SchedulingOutcome blocked;
      blocked.scheduled = false;
      blocked.reason = "no-feasible-node:pod=" + pod_id;
      return blocked;
    }

    group.bound_nodes.insert(chosen->node_id);
    claim(deltas[chosen->node_id], pod, cpu_policy);
    tentative_groups[chosen->node_id].insert({group.job_id, group.group_id});
    out.placements.push_back({pod_id, chosen->node_id, group.group_id, pod.n_tasks_in_pod, {}});
  }

  // The launcher runs beside the control plane and requests nothing.
  SchedulingOutcome::PodPlacement launcher{pod_set.launcher.pod_id,
                                           cluster.control_plane_node().node_id, -1, 0, {}};
  out.placements.insert(out.placements.begin(), std::move(launcher));
  out.scheduled = true;
  return out;
}

SchedulingOutcome schedule_job_baseline(const PodSet& pod_set, const ClusterState& cluster,
                                        CpuPolicy cpu_policy, std::mt19937_64& rng) {
  std::map<std::string, NodeDelta> deltas;
  const std::vector<const NodeState*> candidates = worker_nodes_sorted(cluster);

  SchedulingOutcome out;
  for (const auto& pod : pod_set.workers) {
    std::vector<const NodeState*> feasible;
    for (const NodeState* node : candidates) {
      if (predicate_with_delta(pod, *node, cpu_policy, deltas[node->node_id])) {
        feasible.push_back(node);
      }
    }
    if (feasible.empty()) {
      SchedulingOutcome blocked;
      blocked.scheduled = false;
      blocked.reason = "no-feasible-node:pod=" + pod.pod_id;
      return blocked;
    }

    long best = least_requested_score(pod, *feasible.front(), deltas[feasible.front()->node_id]);
    std::vector<const NodeState*> ties{feasible.front()};
    for (size_t i = 1; i < feasible.size(); ++i) {
      long score = least_requested_score(pod, *feasible[i], deltas[feasible[i]->node_id]);
      if (score > best) {
        best = score;
        ties = {feasible[i]};
      } else if (score == best) {
        ties.push_back(feasible[i]);
      }
    }
    // rng consumed only on real ties, so binding sequences stay reproducible
    const NodeState* chosen =
        ties.size() == 1 ? ties.front() : ties[static_cast<size_t>(rng() % ties.size())];

    claim(deltas[chosen->node_id], pod, cpu_policy);
    out.placements.push_back({pod.pod_id, chosen->node_id, 0, pod.n_tasks_in_pod, {}});
  }

  SchedulingOutcome::PodPlacement launcher{pod_set.launcher.pod_id,
                                           cluster.control_plane_node().node_id, -1, 0, {}};
  out.placements.insert(out.placements.begin(), std::move(launcher));
  out.scheduled = true;
  return out;
}

std::vector<std::pair<std::string, SchedulingOutcome>> gang_admit(std::deque<PendingJob>& pending,
                                                                  ClusterState& cluster,
                                                                  SchedulerMode mode,
                                                                  const KubeletPolicy& kubelet,
                                                                  std::mt19937_64& rng) {
  const CpuPolicy cpu_policy = cpu_policy_from_kubelet(kubelet);
  std::vector<std::pair<std::string, SchedulingOutcome>> results;

  while (!pending.empty()) {
    PendingJob& head = pending.front();
    SchedulingOutcome outcome =
        mode == SchedulerMode::TaskGroup
            ? schedule_job_taskgroup(head.pods, head.plan, cluster, cpu_policy)
            : schedule_job_baseline(head.pods, cluster, cpu_policy, rng);

    if (!outcome.scheduled) {
      // Head-of-line blocking: nothing behind the head may overtake it.
      results.emplace_back(head.job.job_id, std::move(outcome));
      break;
    }

    for (auto& placement : outcome.placements) {
      const PodSpec& pod = head.pods.find_pod(placement.pod_id);
      NodeState& node = cluster.find(placement.node_id);
      placement.assignment = admit_pod(pod, placement.group_id, node, kubelet);
    }
    results.emplace_back(head.job.job_id, std::move(outcome));
    pending.pop_front();
  }
  return results;
}

}  // namespace grainsched
