#pragma once

#include <map>
#include <string>
#include <vector>

#include "grainsched/cluster.hpp"
#include "grainsched/job.hpp"
#include "grainsched/rational.hpp"

namespace grainsched {

// Tunable slowdown coefficients. The shipped defaults come from the
// calibrate command (see configs/); nothing here is a measured constant.
struct PerfParams {
  Rational alpha_net_network;               // per extra node, network profile
  Rational alpha_net_other;                 // per extra node, everything else
  std::map<Profile, Rational> beta_mig;     // migration / context-switch factor
  std::map<Profile, Rational> rho_remote;   // remote-memory-access factor
  std::map<Profile, Rational> mem_sensitivity;  // weight on bandwidth oversubscription
  Rational domain_bandwidth_gbps;           // default per-domain capacity

  static PerfParams defaults();
  void validate() const;

  Rational alpha_net(Profile p) const;
  Rational beta(Profile p) const;
  Rational rho(Profile p) const;
  Rational sigma(Profile p) const;
};

// Multiplicative slowdown, factored by cause. total() == product, exact.
struct SlowdownBreakdown {
  Rational s_net = 1;
  Rational s_cpu = 1;
  Rational s_mem = 1;
  Rational s_remote = 1;

  Rational total() const { return s_net * s_cpu * s_mem * s_remote; }
};

// Where one worker's tasks ended up.
struct WorkerPlacement {
  std::string node_id;
  CpuAssignment assignment;
  int n_tasks = 0;
};

// Placement of one running job, paired with its spec for profile/bandwidth.
struct JobPlacement {
  const JobSpec* job = nullptr;
  std::vector<WorkerPlacement> workers;
};

// Aggregate bandwidth demand per (node_id, domain_id), from every resident
// task of every running job. Exclusive pods load domains in proportion to
// their per-domain CPU counts; shared pods spread evenly over the node.
using DomainDemand = std::map<std::pair<std::string, int>, Rational>;

DomainDemand compute_domain_demand(const std::vector<JobPlacement>& running,
                                   const ClusterState& cluster);

// Slowdown of one job given its placement and the whole-cluster demand:
//   s_net    = 1 + alpha_net(profile) * (distinct nodes - 1)
//   s_cpu    = 1 + beta * max_i (ppc_i - 1)/ppc_i   (flat 1 + beta when shared)
//   s_mem    = 1 + sigma * max(0, max_d D_d/C_d - 1) over domains the job touches
//   s_remote = 1 + rho when any worker is shared or split across domains
SlowdownBreakdown job_slowdown(const JobPlacement& placement, const DomainDemand& cluster_load,
                               const ClusterState& cluster, const PerfParams& params);

}  // namespace grainsched
