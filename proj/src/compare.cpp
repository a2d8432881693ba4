#include "grainsched/compare.hpp"

#include <algorithm>
#include <set>

#include "grainsched/errors.hpp"

namespace grainsched {

namespace {

// Comparisons only make sense over a shared workload: same jobs, same times.
void check_same_workload(const ScenarioSpec& a, const ScenarioSpec& b, std::uint64_t seed) {
  const auto ja = resolve_arrivals(a, seed);
  const auto jb = resolve_arrivals(b, seed);
  bool same = ja.size() == jb.size();
  for (size_t i = 0; same && i < ja.size(); ++i) {
    same = ja[i].job_id == jb[i].job_id && ja[i].benchmark == jb[i].benchmark &&
           ja[i].submit_time_s == jb[i].submit_time_s;
  }
  if (!same) {
    throw ConfigError("scenarios '" + a.name + "' and '" + b.name +
                      "' resolve to different workloads; comparisons must share arrivals");
  }
}

std::map<std::string, Rational> mean_runs_by_benchmark(const SimReport& report) {
  std::map<std::string, std::pair<Rational, int>> acc;
  for (const auto& r : report.records) {
    auto& [sum, n] = acc[r.benchmark];
    sum += r.run_s();
    n += 1;
  }
  std::map<std::string, Rational> out;
  for (const auto& [name, sn] : acc) out[name] = sn.first / Rational(sn.second);
  return out;
}

std::string fmt9(const Rational& v) { return format_decimal(v, 9); }
std::string fmt6(const Rational& v) { return format_decimal(v, 6); }

}  // namespace

const CompareRow& CompareTable::mean_row(const std::string& scenario) const {
  for (const auto& row : rows) {
    if (row.scenario == scenario && !row.seed) return row;
  }
  throw ConfigError("compare table has no scenario named '" + scenario + "'");
}

CompareTable run_compare(const std::vector<ScenarioSpec>& scenarios,
                         const std::vector<std::uint64_t>& seeds, const std::string& baseline) {
  if (scenarios.size() < 2) throw ConfigError("compare needs at least 2 scenarios");
  if (seeds.empty()) throw ConfigError("compare needs at least 1 seed");
  {
    std::set<std::string> names;
    for (const auto& s : scenarios) {
      if (!names.insert(s.name).second) {
        throw ConfigError("duplicate scenario name '" + s.name + "' in compare");
      }
    }
    if (!names.count(baseline)) {
      throw ConfigError("baseline '" + baseline + "' is not among the scenarios");
    }
  }
  for (size_t i = 1; i < scenarios.size(); ++i) {
    check_same_workload(scenarios.front(), scenarios[i], seeds.front());
  }

  CompareTable table;
  table.baseline = baseline;

  std::set<std::string> benchmark_names;

  for (const auto& scenario : scenarios) {
    Rational response_sum = 0;
    Rational makespan_sum = 0;
    std::map<std::string, std::pair<Rational, int>> run_acc;
    for (std::uint64_t seed : seeds) {
      SimReport report = run_simulation(scenario, seed);
      CompareRow row;
      row.scenario = scenario.name;
      row.seed = seed;
      row.overall_response_s = report.overall_response_s;
      row.makespan_s = report.makespan_s;
      row.mean_run_s = mean_runs_by_benchmark(report);
      for (const auto& [name, mean] : row.mean_run_s) {
        benchmark_names.insert(name);
        auto& [sum, n] = run_acc[name];
        sum += mean;
        n += 1;
      }
      response_sum += report.overall_response_s;
      makespan_sum += report.makespan_s;
      table.rows.push_back(std::move(row));
    }
    CompareRow mean;
    mean.scenario = scenario.name;
    mean.overall_response_s = response_sum / Rational(static_cast<int>(seeds.size()));
    mean.makespan_s = makespan_sum / Rational(static_cast<int>(seeds.size()));
    for (const auto& [name, sn] : run_acc) mean.mean_run_s[name] = sn.first / Rational(sn.second);
    table.rows.push_back(std::move(mean));
  }

  table.benchmarks.assign(benchmark_names.begin(), benchmark_names.end());

  const CompareRow& base = table.mean_row(baseline);
  for (auto& row : table.rows) {
    if (row.seed) continue;
    row.delta_response = base.overall_response_s == 0
                             ? Rational(0)
                             : (base.overall_response_s - row.overall_response_s) /
                                   base.overall_response_s;
    row.delta_makespan =
        base.makespan_s == 0 ? Rational(0)
                             : (base.makespan_s - row.makespan_s) / base.makespan_s;
  }
  return table;
}

std::string compare_csv_text(const CompareTable& table) {
  std::string out = "scenario,seed,overall_response_s,makespan_s";
  for (const auto& b : table.benchmarks) out += ",mean_run_s:" + b;
  out += ",delta_response_vs_" + table.baseline + ",delta_makespan_vs_" + table.baseline + "\n";

  for (const auto& row : table.rows) {
    out += row.scenario + ",";
    out += row.seed ? std::to_string(*row.seed) : "mean";
    out += "," + fmt9(row.overall_response_s) + "," + fmt9(row.makespan_s);
    for (const auto& b : table.benchmarks) {
      auto it = row.mean_run_s.find(b);
      out += ",";
      if (it != row.mean_run_s.end()) out += fmt9(it->second);
    }
    out += ",";
    if (row.delta_response) out += fmt6(*row.delta_response);
    out += ",";
    if (row.delta_makespan) out += fmt6(*row.delta_makespan);
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json compare_to_json(const CompareTable& table) {
  nlohmann::ordered_json out;
  out["schema"] = "grainsched-compare/1";
  out["baseline"] = table.baseline;
  out["benchmarks"] = table.benchmarks;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    r["scenario"] = row.scenario;
    if (row.seed) {
      r["seed"] = *row.seed;
    } else {
      r["seed"] = "mean";
    }
    r["overall_response_s"] = fmt9(row.overall_response_s);
    r["overall_response_s_approx"] = to_double(row.overall_response_s);
    r["makespan_s"] = fmt9(row.makespan_s);
    r["makespan_s_approx"] = to_double(row.makespan_s);
    nlohmann::ordered_json runs = nlohmann::ordered_json::object();
    for (const auto& [name, mean] : row.mean_run_s) runs[name] = fmt9(mean);
    r["mean_run_s"] = runs;
    if (row.delta_response) r["delta_response"] = fmt6(*row.delta_response);
    if (row.delta_makespan) r["delta_makespan"] = fmt6(*row.delta_makespan);
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace grainsched
