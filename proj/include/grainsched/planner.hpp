#pragma once

#include <string>

#include "grainsched/job.hpp"

namespace grainsched {

// How a job's tasks are partitioned into workers and spread over nodes.
// Scale: one worker per node used. Granularity: one worker per task.
// None: leave the job as submitted on a single node. VolcanoNative: one
// worker per task for every profile, network included. KubeflowSingle: one
// worker holding every task.
enum class GranularityPolicy { Scale, Granularity, None, VolcanoNative, KubeflowSingle };

std::string granularity_policy_name(GranularityPolicy p);
GranularityPolicy granularity_policy_from_name(const std::string& name);

GranularityPlan select_granularity(const JobSpec& job, int max_nodes, GranularityPolicy policy);

}  // namespace grainsched
