#include "grainsched/cluster.hpp"

#include <algorithm>

#include "grainsched/errors.hpp"

namespace grainsched {

int NodeState::free_exclusive_cpus() const {
  int n = 0;
  for (const auto& d : domains) n += static_cast<int>(d.free_exclusive_cpus.size());
  return n;
}

const PodBinding* NodeState::find_binding(const std::string& pod_id) const {
  for (const auto& b : bindings) {
    if (b.pod_id == pod_id) return &b;
  }
  return nullptr;
}

std::set<std::pair<std::string, int>> NodeState::groups_present() const {
  std::set<std::pair<std::string, int>> groups;
  for (const auto& b : bindings) {
    if (b.group_id >= 0) groups.insert({b.job_id, b.group_id});
  }
  return groups;
}

NodeState& ClusterState::find(const std::string& node_id) {
  for (auto& n : nodes) {
    if (n.node_id == node_id) return n;
  }
  throw InternalError("unknown node '" + node_id + "'");
}

const NodeState& ClusterState::find(const std::string& node_id) const {
  return const_cast<ClusterState*>(this)->find(node_id);
}

const NodeState& ClusterState::control_plane_node() const {
  for (const auto& n : nodes) {
    if (n.control_plane) return n;
  }
  throw InternalError("cluster has no control-plane node");
}

int ClusterState::worker_node_count() const {
  int n = 0;
  for (const auto& node : nodes) {
    if (!node.control_plane) ++n;
  }
  return n;
}

void ClusterState::check_invariants() const {
  for (const auto& node : nodes) {
    if (node.allocated.cpu_millicores > node.allocatable.cpu_millicores ||
        node.allocated.memory_bytes > node.allocatable.memory_bytes) {
      throw InternalError("node " + node.node_id + " over-committed: allocated " +
                          node.allocated.describe() + " of " + node.allocatable.describe());
    }
    ResourceQuantity bound_sum;
    int bound_exclusive = 0;
    std::set<int> bound_ids;
    for (const auto& b : node.bindings) {
      bound_sum += b.resources;
      if (b.assignment.mode == CpuMode::Exclusive) {
        bound_exclusive += static_cast<int>(b.assignment.cpu_ids.size());
        for (int id : b.assignment.cpu_ids) {
          if (!bound_ids.insert(id).second) {
            throw InternalError("node " + node.node_id + ": cpu " + std::to_string(id) +
                                " assigned to two pods");
          }
        }
      }
    }
    if (!(bound_sum == node.allocated)) {
      throw InternalError("node " + node.node_id + ": allocated " + node.allocated.describe() +
                          " does not match bound pods " + bound_sum.describe());
    }
    int taken = 0;
    for (const auto& d : node.domains) {
      for (int id : d.free_exclusive_cpus) {
        if (bound_ids.count(id)) {
          throw InternalError("node " + node.node_id + ": cpu " + std::to_string(id) +
                              " both free and bound");
        }
        if (std::find(d.allocatable_cpus.begin(), d.allocatable_cpus.end(), id) ==
            d.allocatable_cpus.end()) {
          throw InternalError("node " + node.node_id + ": cpu " + std::to_string(id) +
                              " free but not allocatable");
        }
      }
      taken += static_cast<int>(d.allocatable_cpus.size() - d.free_exclusive_cpus.size());
    }
    if (taken != bound_exclusive) {
      throw InternalError("node " + node.node_id + ": exclusive pool accounting mismatch");
    }
  }
}

void ClusterConfig::validate() const {
  if (worker_nodes < 1) throw ConfigError("cluster.worker_nodes must be >= 1");
  if (sockets_per_node < 1) throw ConfigError("cluster.sockets_per_node must be >= 1");
  if (cores_per_socket < 1) throw ConfigError("cluster.cores_per_socket must be >= 1");
  if (reserved_cores_per_socket < 0 || reserved_cores_per_socket >= cores_per_socket) {
    throw ConfigError("cluster.reserved_cores_per_socket must be in [0, cores_per_socket)");
  }
  if (memory_bytes <= 0) throw ConfigError("cluster.memory_bytes must be > 0");
  if (domain_bandwidth_gbps && *domain_bandwidth_gbps <= 0) {
    throw ConfigError("cluster.domain_bandwidth_gbps must be > 0");
  }
}

ClusterState make_cluster(const ClusterConfig& config) {
  config.validate();
  ClusterState cluster;

  auto build_node = [&](const std::string& id, bool control_plane) {
    NodeState node;
    node.node_id = id;
    node.control_plane = control_plane;
    int allocatable_cores = 0;
    for (int s = 0; s < config.sockets_per_node; ++s) {
      NumaDomain d;
      d.domain_id = s;
      d.bandwidth_capacity_gbps = config.domain_bandwidth_gbps;
      int first = s * config.cores_per_socket + config.reserved_cores_per_socket;
      int last = (s + 1) * config.cores_per_socket;  // exclusive
      for (int id_ = first; id_ < last; ++id_) {
        d.allocatable_cpus.push_back(id_);
        d.free_exclusive_cpus.insert(id_);
      }
      allocatable_cores += last - first;
      node.domains.push_back(std::move(d));
    }
    node.allocatable = {allocatable_cores * kMillicoresPerCpu, config.memory_bytes};
    return node;
  };

  cluster.nodes.push_back(build_node("control-plane", true));
  for (int i = 0; i < config.worker_nodes; ++i) {
    cluster.nodes.push_back(build_node("node-" + std::to_string(i), false));
  }
  return cluster;
}

}  // namespace grainsched
