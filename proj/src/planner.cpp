#include "grainsched/planner.hpp"

#include <algorithm>

#include "grainsched/errors.hpp"

namespace grainsched {

std::string granularity_policy_name(GranularityPolicy p) {
  switch (p) {
    case GranularityPolicy::Scale: return "scale";
    case GranularityPolicy::Granularity: return "granularity";
    case GranularityPolicy::None: return "none";
    case GranularityPolicy::VolcanoNative: return "volcano-native";
    case GranularityPolicy::KubeflowSingle: return "kubeflow";
  }
  throw InternalError("unknown granularity policy enum value");
}

GranularityPolicy granularity_policy_from_name(const std::string& name) {
  if (name == "scale") return GranularityPolicy::Scale;
  if (name == "granularity") return GranularityPolicy::Granularity;
  if (name == "none") return GranularityPolicy::None;
  if (name == "volcano-native") return GranularityPolicy::VolcanoNative;
  if (name == "kubeflow") return GranularityPolicy::KubeflowSingle;
  throw ConfigError("unknown planner policy '" + name +
                    "' (expected scale, granularity, none, volcano-native or kubeflow)");
}

GranularityPlan select_granularity(const JobSpec& job, int max_nodes, GranularityPolicy policy) {
  if (max_nodes < 1) {
    throw ConfigError("select_granularity: max_nodes must be >= 1, got " +
                      std::to_string(max_nodes));
  }
  const int spread = std::min(max_nodes, job.n_tasks);
  switch (policy) {
    case GranularityPolicy::Scale:
      // Network jobs are kept whole: spanning nodes multiplies communication
      // cost, so they stay in a single worker on a single node.
      if (job.profile == Profile::Network) return {1, 1, 1};
      return {spread, spread, spread};
    case GranularityPolicy::Granularity:
      if (job.profile == Profile::Network) return {1, 1, 1};
      return {spread, job.n_tasks, spread};
    case GranularityPolicy::None:
      return {1, job.default_n_workers, 1};
    case GranularityPolicy::VolcanoNative:
      // One process per container, no profile awareness.
      return {spread, job.n_tasks, spread};
    case GranularityPolicy::KubeflowSingle:
      return {1, 1, 1};
  }
  throw InternalError("unknown granularity policy enum value");
}

}  // namespace grainsched
