#include "grainsched/workload.hpp"

#include <algorithm>
#include <set>

#include "grainsched/errors.hpp"

namespace grainsched {

std::vector<BenchmarkDef> default_benchmarks() {
  // 16 whole CPUs and 32 GiB per job, 16 tasks, exactly-subscribed. Runtimes
  // and per-task bandwidths are model inputs tuned by calibration.
  auto def = [](std::string name, Profile profile, int runtime_s,
                Rational bandwidth) {
    BenchmarkDef b;
    b.name = std::move(name);
    b.profile = profile;
    b.n_tasks = 16;
    b.base_runtime_s = runtime_s;
    b.per_process_bandwidth_gbps = bandwidth;
    b.total_resources = {16 * kMillicoresPerCpu, 32 * kBytesPerGiB};
    b.default_n_workers = 1;
    return b;
  };
  return {
      def("EP-DGEMM", Profile::Cpu, 240, Rational(1, 2)),
      def("EP-STREAM", Profile::Memory, 180, Rational(10)),
      def("G-FFT", Profile::Network, 150, Rational(1, 2)),
      def("G-RandomRing", Profile::Network, 120, Rational(1, 2)),
      def("MiniFE", Profile::CpuMemory, 300, Rational(5)),
  };
}

const BenchmarkDef& ScenarioSpec::find_benchmark(const std::string& bench_name) const {
  for (const auto& b : benchmarks) {
    if (b.name == bench_name) return b;
  }
  throw ConfigError("unknown benchmark '" + bench_name + "' in scenario " + name);
}

void ScenarioSpec::validate() const {
  cluster.validate();
  perf.validate();
  std::set<std::string> seen;
  for (const auto& b : benchmarks) {
    if (!seen.insert(b.name).second) {
      throw ConfigError("duplicate benchmark name '" + b.name + "'");
    }
    if (b.n_tasks < 1) throw ConfigError("benchmark " + b.name + ": n_tasks must be >= 1");
    if (b.base_runtime_s <= 0) {
      throw ConfigError("benchmark " + b.name + ": base_runtime_s must be > 0");
    }
    if (b.per_process_bandwidth_gbps < 0) {
      throw ConfigError("benchmark " + b.name + ": per_process_bandwidth_gbps must be >= 0");
    }
    if (b.default_n_workers < 1) {
      throw ConfigError("benchmark " + b.name + ": default_n_workers must be >= 1");
    }
  }
  if (workload.generator != "" && workload.generator != "steady" &&
      workload.generator != "burst-mix") {
    throw ConfigError("unknown workload generator '" + workload.generator +
                      "' (expected steady or burst-mix)");
  }
  if (workload.generator.empty() && workload.arrivals.empty()) {
    throw ConfigError("scenario " + name + ": workload has neither a generator nor arrivals");
  }
  if (workload.generator == "steady") {
    if (workload.count < 1) throw ConfigError("workload.count must be >= 1");
    if (workload.interval_s < 0) throw ConfigError("workload.interval_s must be >= 0");
    find_benchmark(workload.benchmark);
  }
  if (workload.generator == "burst-mix") {
    if (workload.repeats < 1) throw ConfigError("workload.repeats must be >= 1");
    if (workload.window_s < 0) throw ConfigError("workload.window_s must be >= 0");
  }
  for (const auto& a : workload.arrivals) {
    find_benchmark(a.benchmark);
    if (a.submit_time_s < 0) throw ConfigError("arrival submit_time_s must be >= 0");
  }
}

std::vector<std::string> known_modes() {
  return {"NONE", "CM", "CM_S", "CM_G", "CM_S_TG", "CM_G_TG", "kubeflow", "volcano-native"};
}

void apply_mode(ScenarioSpec& scenario, const std::string& mode) {
  auto set = [&](CpuManagerPolicy cm, TopologyManagerPolicy tm, GranularityPolicy gp,
                 SchedulerMode sm) {
    scenario.kubelet = {cm, tm};
    scenario.planner = gp;
    scenario.scheduler = sm;
    scenario.name = mode;
  };
  const auto kStatic = CpuManagerPolicy::Static;
  const auto kBestEffort = TopologyManagerPolicy::BestEffort;
  if (mode == "NONE") {
    set(CpuManagerPolicy::None, TopologyManagerPolicy::None, GranularityPolicy::None,
        SchedulerMode::Baseline);
  } else if (mode == "CM") {
    set(kStatic, kBestEffort, GranularityPolicy::None, SchedulerMode::Baseline);
  } else if (mode == "CM_S") {
    set(kStatic, kBestEffort, GranularityPolicy::Scale, SchedulerMode::Baseline);
  } else if (mode == "CM_G") {
    set(kStatic, kBestEffort, GranularityPolicy::Granularity, SchedulerMode::Baseline);
  } else if (mode == "CM_S_TG") {
    set(kStatic, kBestEffort, GranularityPolicy::Scale, SchedulerMode::TaskGroup);
  } else if (mode == "CM_G_TG") {
    set(kStatic, kBestEffort, GranularityPolicy::Granularity, SchedulerMode::TaskGroup);
  } else if (mode == "kubeflow") {
    set(kStatic, kBestEffort, GranularityPolicy::KubeflowSingle, SchedulerMode::Baseline);
  } else if (mode == "volcano-native") {
    set(kStatic, kBestEffort, GranularityPolicy::VolcanoNative, SchedulerMode::Baseline);
  } else {
    std::string names;
    for (const auto& m : known_modes()) names += (names.empty() ? "" : ", ") + m;
    throw ConfigError("unknown scenario mode '" + mode + "' (expected one of " + names + ")");
  }
}

ScenarioSpec scenario_preset(const std::string& id) {
  std::string base = id;
  std::string mode = "CM_G_TG";
  if (auto colon = id.find(':'); colon != std::string::npos) {
    base = id.substr(0, colon);
    mode = id.substr(colon + 1);
  }

  ScenarioSpec scenario;
  if (base == "exp1") {
    scenario.workload.generator = "steady";
    scenario.workload.benchmark = "EP-DGEMM";
    scenario.workload.count = 10;
    scenario.workload.interval_s = 60;
  } else if (base == "exp2" || base == "exp3") {
    // exp3 reuses exp2's arrivals; only the mode differs.
    scenario.workload.generator = "burst-mix";
    scenario.workload.repeats = 4;
    scenario.workload.window_s = 1200;
  } else {
    throw ConfigError("unknown preset '" + base + "' (expected exp1, exp2 or exp3)");
  }
  apply_mode(scenario, mode);
  scenario.validate();
  return scenario;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

JobSpec make_job(const ScenarioSpec& scenario, const std::string& bench_name,
                 const std::string& job_id, const Rational& submit_s) {
  const BenchmarkDef& b = scenario.find_benchmark(bench_name);
  JobSpec job;
  job.job_id = job_id;
  job.benchmark = b.name;
  job.n_tasks = b.n_tasks;
  job.total_resources = b.total_resources;
  job.profile = b.profile;
  job.submit_time_s = submit_s;
  job.base_runtime_s = b.base_runtime_s;
  job.per_process_bandwidth_gbps = b.per_process_bandwidth_gbps;
  job.default_n_workers = b.default_n_workers;
  job.validate();
  return job;
}

}  // namespace

std::vector<JobSpec> resolve_arrivals(const ScenarioSpec& scenario, std::uint64_t seed) {
  scenario.validate();
  const WorkloadSpec& w = scenario.workload;

  // (benchmark, submit) pairs in submission order, ids assigned in that order.
  std::vector<Arrival> list;
  if (w.generator == "steady") {
    for (int i = 0; i < w.count; ++i) {
      list.push_back({w.benchmark, w.interval_s * Rational(i)});
    }
  } else if (w.generator == "burst-mix") {
    std::mt19937_64 rng(splitmix64(2 * seed));
    std::vector<std::string> types;
    for (const auto& b : scenario.benchmarks) {
      for (int r = 0; r < w.repeats; ++r) types.push_back(b.name);
    }
    // Fisher-Yates with modulo draws; avoids distribution objects whose
    // output is not pinned down by the standard.
    for (size_t i = types.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(rng() % i);
      std::swap(types[i - 1], types[j]);
    }
    const std::int64_t window_ms =
        floor_rational(w.window_s * Rational(1000)).convert_to<std::int64_t>();
    std::vector<std::int64_t> times;
    times.reserve(types.size());
    for (size_t i = 0; i < types.size(); ++i) {
      times.push_back(static_cast<std::int64_t>(
          rng() % static_cast<std::uint64_t>(window_ms + 1)));
    }
    std::sort(times.begin(), times.end());
    for (size_t i = 0; i < types.size(); ++i) {
      list.push_back({types[i], Rational(times[i], 1000)});
    }
  } else {
    list = w.arrivals;
  }

  std::map<std::string, int> occurrence;
  std::vector<JobSpec> jobs;
  for (const auto& a : list) {
    int k = occurrence[a.benchmark]++;
    jobs.push_back(
        make_job(scenario, a.benchmark, a.benchmark + "-" + std::to_string(k), a.submit_time_s));
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) {
    if (a.submit_time_s != b.submit_time_s) return a.submit_time_s < b.submit_time_s;
    return a.job_id < b.job_id;
  });
  return jobs;
}

}  // namespace grainsched
