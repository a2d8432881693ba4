#include "grainsched/allocator.hpp"

#include <algorithm>

#include "grainsched/errors.hpp"

namespace grainsched {

std::string cpu_manager_policy_name(CpuManagerPolicy p) {
  return p == CpuManagerPolicy::Static ? "static" : "none";
}

CpuManagerPolicy cpu_manager_policy_from_name(const std::string& name) {
  if (name == "none") return CpuManagerPolicy::None;
  if (name == "static") return CpuManagerPolicy::Static;
  throw ConfigError("unknown cpu_manager policy '" + name + "' (expected none or static)");
}

std::string topology_manager_policy_name(TopologyManagerPolicy p) {
  return p == TopologyManagerPolicy::BestEffort ? "best-effort" : "none";
}

TopologyManagerPolicy topology_manager_policy_from_name(const std::string& name) {
  if (name == "none") return TopologyManagerPolicy::None;
  if (name == "best-effort") return TopologyManagerPolicy::BestEffort;
  throw ConfigError("unknown topology_manager policy '" + name +
                    "' (expected none or best-effort)");
}

namespace {

// Takes the `count` lowest free CPU ids from one domain.
void take_from_domain(NumaDomain& d, int count, CpuAssignment& out) {
  for (int i = 0; i < count; ++i) {
    auto it = d.free_exclusive_cpus.begin();
    if (it == d.free_exclusive_cpus.end()) {
      throw InternalError("domain " + std::to_string(d.domain_id) + " ran out of free CPUs");
    }
    out.cpu_ids.push_back(*it);
    d.free_exclusive_cpus.erase(it);
  }
  if (count > 0) out.domain_spread[d.domain_id] += count;
}

CpuAssignment assign_exclusive(NodeState& node, int k, TopologyManagerPolicy topology) {
  CpuAssignment a;
  a.mode = CpuMode::Exclusive;
  if (node.free_exclusive_cpus() < k) {
    throw InternalError("node " + node.node_id + ": " + std::to_string(k) +
                        " exclusive CPUs requested but only " +
                        std::to_string(node.free_exclusive_cpus()) + " free");
  }

  if (topology == TopologyManagerPolicy::BestEffort) {
    // Prefer the single domain that fits and has the most free CPUs; ties go
    // to the lowest domain_id.
    NumaDomain* best = nullptr;
    for (auto& d : node.domains) {
      if (static_cast<int>(d.free_exclusive_cpus.size()) < k) continue;
      if (!best || d.free_exclusive_cpus.size() > best->free_exclusive_cpus.size()) best = &d;
    }
    if (best) {
      take_from_domain(*best, k, a);
    } else {
      // No single domain fits: spill greedily, fullest free pool first.
      int remaining = k;
      while (remaining > 0) {
        NumaDomain* pick = nullptr;
        for (auto& d : node.domains) {
          if (d.free_exclusive_cpus.empty()) continue;
          if (!pick || d.free_exclusive_cpus.size() > pick->free_exclusive_cpus.size()) pick = &d;
        }
        if (!pick) throw InternalError("node " + node.node_id + ": free CPU accounting broken");
        int take = std::min<int>(remaining, static_cast<int>(pick->free_exclusive_cpus.size()));
        take_from_domain(*pick, take, a);
        remaining -= take;
      }
    }
  } else {
    // Topology manager off: lowest-numbered free CPU ids node-wide.
    int remaining = k;
    while (remaining > 0) {
      NumaDomain* lowest = nullptr;
      for (auto& d : node.domains) {
        if (d.free_exclusive_cpus.empty()) continue;
        if (!lowest || *d.free_exclusive_cpus.begin() < *lowest->free_exclusive_cpus.begin()) {
          lowest = &d;
        }
      }
      if (!lowest) throw InternalError("node " + node.node_id + ": free CPU accounting broken");
      take_from_domain(*lowest, 1, a);
      remaining -= 1;
    }
  }
  std::sort(a.cpu_ids.begin(), a.cpu_ids.end());
  return a;
}

}  // namespace

CpuAssignment admit_pod(const PodSpec& pod, int group_id, NodeState& node,
                        const KubeletPolicy& policy) {
  ResourceQuantity free = node.allocatable - node.allocated;
  if (!pod.resources.fits_within(free)) {
    throw InternalError("node " + node.node_id + ": pod " + pod.pod_id + " needs " +
                        pod.resources.describe() + " but only " + free.describe() + " free");
  }
  if (node.find_binding(pod.pod_id)) {
    throw InternalError("pod " + pod.pod_id + " already bound on node " + node.node_id);
  }

  CpuAssignment a;
  if (policy.cpu_manager == CpuManagerPolicy::Static && pod.resources.cpu_millicores > 0) {
    if (pod.resources.cpu_millicores % kMillicoresPerCpu != 0) {
      throw InternalError("pod " + pod.pod_id +
                          " reached static admission with fractional CPU request " +
                          std::to_string(pod.resources.cpu_millicores) + "m");
    }
    int k = static_cast<int>(pod.resources.cpu_millicores / kMillicoresPerCpu);
    a = assign_exclusive(node, k, policy.topology_manager);
  }

  node.allocated += pod.resources;
  node.bindings.push_back({pod.pod_id, pod.job_id, group_id, pod.n_tasks_in_pod, pod.resources, a});
  return a;
}

void admit_pod_with_assignment(const PodSpec& pod, int group_id, const CpuAssignment& assignment,
                               NodeState& node) {
  ResourceQuantity free = node.allocatable - node.allocated;
  if (!pod.resources.fits_within(free)) {
    throw InternalError("replay: node " + node.node_id + " lacks capacity for pod " + pod.pod_id);
  }
  if (node.find_binding(pod.pod_id)) {
    throw InternalError("replay: pod " + pod.pod_id + " already bound on node " + node.node_id);
  }
  for (int id : assignment.cpu_ids) {
    bool taken = false;
    for (auto& d : node.domains) {
      if (d.free_exclusive_cpus.erase(id) > 0) {
        taken = true;
        break;
      }
    }
    if (!taken) {
      throw InternalError("replay: cpu " + std::to_string(id) + " not free on node " +
                          node.node_id);
    }
  }
  node.allocated += pod.resources;
  node.bindings.push_back(
      {pod.pod_id, pod.job_id, group_id, pod.n_tasks_in_pod, pod.resources, assignment});
}

void release_pod(const std::string& pod_id, NodeState& node) {
  auto it = std::find_if(node.bindings.begin(), node.bindings.end(),
                         [&](const PodBinding& b) { return b.pod_id == pod_id; });
  if (it == node.bindings.end()) {
    throw InternalError("release of pod '" + pod_id + "' not bound on node " + node.node_id);
  }
  for (int id : it->assignment.cpu_ids) {
    bool returned = false;
    for (auto& d : node.domains) {
      if (std::find(d.allocatable_cpus.begin(), d.allocatable_cpus.end(), id) !=
          d.allocatable_cpus.end()) {
        if (!d.free_exclusive_cpus.insert(id).second) {
          throw InternalError("cpu " + std::to_string(id) + " double-freed on node " +
                              node.node_id);
        }
        returned = true;
        break;
      }
    }
    if (!returned) {
      throw InternalError("cpu " + std::to_string(id) + " not allocatable on node " +
                          node.node_id);
    }
  }
  node.allocated -= it->resources;
  node.bindings.erase(it);
}

}  // namespace grainsched
