#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grainsched/engine.hpp"

namespace grainsched {

// One line of the comparison: a (scenario, seed) run, or a scenario's mean
// over all seeds when `seed` is empty.
struct CompareRow {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  Rational overall_response_s;
  Rational makespan_s;
  std::map<std::string, Rational> mean_run_s;  // per benchmark
  // Filled on mean rows only: (baseline - value) / baseline.
  std::optional<Rational> delta_response;
  std::optional<Rational> delta_makespan;
};

struct CompareTable {
  std::string baseline;
  std::vector<std::string> benchmarks;  // column order
  std::vector<CompareRow> rows;         // per-seed rows then the mean, per scenario

  const CompareRow& mean_row(const std::string& scenario) const;
};

// Runs every (scenario, seed) pair and assembles the table. All scenarios
// must resolve to identical workloads (same jobs at the same times) per
// seed; `baseline` must name one of the scenarios.
CompareTable run_compare(const std::vector<ScenarioSpec>& scenarios,
                         const std::vector<std::uint64_t>& seeds, const std::string& baseline);

std::string compare_csv_text(const CompareTable& table);
nlohmann::ordered_json compare_to_json(const CompareTable& table);

}  // namespace grainsched
