#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grainsched/rational.hpp"
#include "grainsched/resources.hpp"

namespace grainsched {

enum class CpuMode { Shared, Exclusive };

// CPU placement of one pod on one node. Exclusive pods own whole CPU ids;
// shared pods float over the node's shared pool.
struct CpuAssignment {
  CpuMode mode = CpuMode::Shared;
  std::vector<int> cpu_ids;           // sorted; empty in Shared mode
  std::map<int, int> domain_spread;   // domain_id -> cpus taken from it

  bool split_across_domains() const { return domain_spread.size() > 1; }
};

// One NUMA domain: the exclusive-CPU pool lives here. `allocatable_cpus` is
// fixed at construction; `free_exclusive_cpus` shrinks and grows with
// admissions.
struct NumaDomain {
  int domain_id = 0;
  std::vector<int> allocatable_cpus;
  std::set<int> free_exclusive_cpus;
  std::optional<Rational> bandwidth_capacity_gbps;  // falls back to the model default
};

// A pod admitted on a node, with its placement-group identity kept so later
// scheduling passes can see which groups already live here.
struct PodBinding {
  std::string pod_id;
  std::string job_id;
  int group_id = -1;  // -1 for launchers
  int n_tasks = 0;
  ResourceQuantity resources;
  CpuAssignment assignment;
};

struct NodeState {
  std::string node_id;
  bool control_plane = false;
  std::vector<NumaDomain> domains;
  ResourceQuantity allocatable;
  ResourceQuantity allocated;
  std::vector<PodBinding> bindings;

  int free_exclusive_cpus() const;
  const PodBinding* find_binding(const std::string& pod_id) const;
  // Distinct (job_id, group_id) pairs with at least one worker pod here.
  std::set<std::pair<std::string, int>> groups_present() const;
};

struct ClusterState {
  std::vector<NodeState> nodes;

  NodeState& find(const std::string& node_id);
  const NodeState& find(const std::string& node_id) const;
  const NodeState& control_plane_node() const;
  int worker_node_count() const;
  // Whole-cluster bookkeeping audit; throws InternalError on violation.
  void check_invariants() const;
};

// Homogeneous cluster description; one control-plane node plus
// `worker_nodes` identical workers. Reserved cores are carved off the low
// end of each socket and never enter the exclusive pool or capacity totals.
struct ClusterConfig {
  int worker_nodes = 4;
  int sockets_per_node = 2;
  int cores_per_socket = 18;
  int reserved_cores_per_socket = 2;
  std::int64_t memory_bytes = 256 * kBytesPerGiB;
  std::optional<Rational> domain_bandwidth_gbps;

  void validate() const;
};

ClusterState make_cluster(const ClusterConfig& config);

}  // namespace grainsched
