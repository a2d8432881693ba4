#include "grainsched/resources.hpp"

#include <string>

#include "grainsched/errors.hpp"

namespace grainsched {

ResourceQuantity& ResourceQuantity::operator+=(const ResourceQuantity& other) {
  cpu_millicores += other.cpu_millicores;
  memory_bytes += other.memory_bytes;
  return *this;
}

ResourceQuantity& ResourceQuantity::operator-=(const ResourceQuantity& other) {
  if (other.cpu_millicores > cpu_millicores || other.memory_bytes > memory_bytes) {
    throw InternalError("resource subtraction below zero: " + describe() + " minus " +
                        other.describe());
  }
  cpu_millicores -= other.cpu_millicores;
  memory_bytes -= other.memory_bytes;
  return *this;
}

std::string ResourceQuantity::describe() const {
  return std::to_string(cpu_millicores) + "m/" + std::to_string(memory_bytes) + "B";
}

ResourceQuantity resource_scale(const ResourceQuantity& total, int n_tasks_in_pod,
                                int n_total_tasks) {
  if (n_total_tasks < 1) {
    throw ConfigError("resource_scale: n_total_tasks must be >= 1, got " +
                      std::to_string(n_total_tasks));
  }
  if (n_tasks_in_pod < 0 || n_tasks_in_pod > n_total_tasks) {
    throw ConfigError("resource_scale: n_tasks_in_pod out of range: " +
                      std::to_string(n_tasks_in_pod) + " of " + std::to_string(n_total_tasks));
  }
  if (total.cpu_millicores % n_total_tasks != 0) {
    throw ConfigError("total_resources.cpu_millicores (" + std::to_string(total.cpu_millicores) +
                      ") not divisible by n_tasks (" + std::to_string(n_total_tasks) + ")");
  }
  if (total.memory_bytes % n_total_tasks != 0) {
    throw ConfigError("total_resources.memory_bytes (" + std::to_string(total.memory_bytes) +
                      ") not divisible by n_tasks (" + std::to_string(n_total_tasks) + ")");
  }
  return {total.cpu_millicores / n_total_tasks * n_tasks_in_pod,
          total.memory_bytes / n_total_tasks * n_tasks_in_pod};
}

}  // namespace grainsched
