#include "grainsched/job.hpp"

#include "grainsched/errors.hpp"

namespace grainsched {

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::Network: return "network";
    case Profile::Cpu: return "cpu";
    case Profile::Memory: return "memory";
    case Profile::CpuMemory: return "cpu-memory";
  }
  throw InternalError("unknown profile enum value");
}

Profile profile_from_name(const std::string& name) {
  if (name == "network") return Profile::Network;
  if (name == "cpu") return Profile::Cpu;
  if (name == "memory") return Profile::Memory;
  if (name == "cpu-memory") return Profile::CpuMemory;
  throw ConfigError("unknown profile '" + name +
                    "' (expected network, cpu, memory or cpu-memory)");
}

void JobSpec::validate() const {
  if (job_id.empty()) throw ConfigError("job_id must be non-empty");
  if (n_tasks < 1) {
    throw ConfigError("job " + job_id + ": n_tasks must be >= 1, got " + std::to_string(n_tasks));
  }
  if (total_resources.cpu_millicores < 0 || total_resources.memory_bytes < 0) {
    throw ConfigError("job " + job_id + ": total_resources must be non-negative");
  }
  if (total_resources.cpu_millicores % n_tasks != 0) {
    throw ConfigError("job " + job_id + ": total_resources.cpu_millicores (" +
                      std::to_string(total_resources.cpu_millicores) + ") not divisible by n_tasks (" +
                      std::to_string(n_tasks) + ")");
  }
  if (total_resources.memory_bytes % n_tasks != 0) {
    throw ConfigError("job " + job_id + ": total_resources.memory_bytes (" +
                      std::to_string(total_resources.memory_bytes) + ") not divisible by n_tasks (" +
                      std::to_string(n_tasks) + ")");
  }
  if (submit_time_s < 0) throw ConfigError("job " + job_id + ": submit_time_s must be >= 0");
  if (base_runtime_s <= 0) throw ConfigError("job " + job_id + ": base_runtime_s must be > 0");
  if (per_process_bandwidth_gbps < 0) {
    throw ConfigError("job " + job_id + ": per_process_bandwidth_gbps must be >= 0");
  }
  if (default_n_workers < 1) {
    throw ConfigError("job " + job_id + ": default_n_workers must be >= 1");
  }
}

}  // namespace grainsched
