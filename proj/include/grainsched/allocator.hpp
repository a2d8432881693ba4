#pragma once

#include <string>

#include "grainsched/cluster.hpp"
#include "grainsched/job.hpp"

namespace grainsched {

enum class CpuManagerPolicy { None, Static };
enum class TopologyManagerPolicy { None, BestEffort };

// Node-level admission behavior. The topology manager only matters when the
// CPU manager is Static; with cpu_manager None every pod runs on shared CPUs.
struct KubeletPolicy {
  CpuManagerPolicy cpu_manager = CpuManagerPolicy::None;
  TopologyManagerPolicy topology_manager = TopologyManagerPolicy::None;
};

std::string cpu_manager_policy_name(CpuManagerPolicy p);
CpuManagerPolicy cpu_manager_policy_from_name(const std::string& name);
std::string topology_manager_policy_name(TopologyManagerPolicy p);
TopologyManagerPolicy topology_manager_policy_from_name(const std::string& name);

// Admits a pod whose capacity the scheduler has already verified; a shortfall
// here is an internal error, not user input. Static policy reserves whole
// CPUs; best-effort packs them into one NUMA domain when any domain fits,
// otherwise splits greedily from the fullest pools but never fails.
CpuAssignment admit_pod(const PodSpec& pod, int group_id, NodeState& node,
                        const KubeletPolicy& policy);

// Re-applies a previously recorded assignment (replay support). The exact
// CPU ids must still be free.
void admit_pod_with_assignment(const PodSpec& pod, int group_id, const CpuAssignment& assignment,
                               NodeState& node);

// Returns exclusive CPUs to their domains and removes the binding.
// Releasing a pod that is not bound is an internal error.
void release_pod(const std::string& pod_id, NodeState& node);

}  // namespace grainsched
