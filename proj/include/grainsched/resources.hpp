#pragma once

#include <cstdint>
#include <string>

namespace grainsched {

// CPU in integer millicores, memory in integer bytes. Integer units keep
// every capacity comparison exact; nothing in the scheduler touches floats.
struct ResourceQuantity {
  std::int64_t cpu_millicores = 0;
  std::int64_t memory_bytes = 0;

  ResourceQuantity& operator+=(const ResourceQuantity& other);
  // Throws InternalError if either component would go negative.
  ResourceQuantity& operator-=(const ResourceQuantity& other);

  friend ResourceQuantity operator+(ResourceQuantity a, const ResourceQuantity& b) {
    a += b;
    return a;
  }
  friend ResourceQuantity operator-(ResourceQuantity a, const ResourceQuantity& b) {
    a -= b;
    return a;
  }
  bool operator==(const ResourceQuantity&) const = default;

  // True when this request fits inside `capacity` componentwise.
  bool fits_within(const ResourceQuantity& capacity) const {
    return cpu_millicores <= capacity.cpu_millicores && memory_bytes <= capacity.memory_bytes;
  }

  std::string describe() const;
};

constexpr std::int64_t kMillicoresPerCpu = 1000;
constexpr std::int64_t kBytesPerGiB = 1024LL * 1024 * 1024;

// Splits a job-wide total evenly across tasks and returns the share for
// `n_tasks_in_pod` of them. The total must divide evenly by the task count
// in both components; otherwise a ConfigError names the offending field.
ResourceQuantity resource_scale(const ResourceQuantity& total, int n_tasks_in_pod, int n_total_tasks);

}  // namespace grainsched
