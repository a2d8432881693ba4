#include "grainsched/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "grainsched/errors.hpp"

namespace grainsched {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + " must be a JSON object");
}

// Typos in config keys should fail loudly, not be silently ignored.
void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& context) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(context + ": unknown key '" + key + "'");
    }
  }
}

std::string require_string(const json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(context + "." + key + " must be a string");
  }
  return j.at(key).get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& key, std::int64_t fallback,
                     const std::string& context) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer() && !j.at(key).is_number_unsigned()) {
    throw ConfigError(context + "." + key + " must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

// True ten-smooth denominators render exactly as finite decimals.
bool denominator_is_ten_smooth(BigInt d) {
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

const std::vector<Profile> kAllProfiles = {Profile::Network, Profile::Cpu, Profile::Memory,
                                           Profile::CpuMemory};

void merge_profile_map(const json& j, const std::string& key, std::map<Profile, Rational>& target,
                       const std::string& context) {
  if (!j.contains(key)) return;
  const json& section = j.at(key);
  require_object(section, context + "." + key);
  for (const auto& [name, value] : section.items()) {
    target[profile_from_name(name)] = json_to_rational(value, context + "." + key + "." + name);
  }
}

json profile_map_to_json(const std::map<Profile, Rational>& m) {
  nlohmann::ordered_json out;
  for (Profile p : kAllProfiles) {
    auto it = m.find(p);
    if (it != m.end()) out[profile_name(p)] = rational_to_json(it->second);
  }
  return out;
}

}  // namespace

Rational json_to_rational(const json& value, const std::string& context) {
  // is_number_integer() is also true for unsigned values, so the unsigned
  // check must come first or 2^63..2^64-1 would wrap through int64_t.
  if (value.is_number_unsigned() &&
      value.get<std::uint64_t>() > std::uint64_t{std::numeric_limits<std::int64_t>::max()}) {
    return Rational(BigInt(std::to_string(value.get<std::uint64_t>())));
  }
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number_float()) {
    // Round-trip through the shortest decimal rendering so the value the
    // author wrote ("0.1") is the value used, not the nearest double.
    return parse_decimal(json(value.get<double>()).dump());
  }
  if (value.is_string()) {
    try {
      return parse_decimal(value.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(context + ": " + e.what());
    }
  }
  throw ConfigError(context + " must be a number or numeric string");
}

nlohmann::json rational_to_json(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) {
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
      return json(num.convert_to<std::int64_t>());
    }
    return json(num.str());
  }
  if (denominator_is_ten_smooth(den)) {
    // Finite decimal: find the scale and emit exact digits as a string.
    int digits = 0;
    BigInt d = den;
    while (d % 2 == 0) {
      d /= 2;
      ++digits;
    }
    int fives = 0;
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    digits = std::max(digits, fives);
    return json(format_decimal(value, digits));
  }
  return json(num.str() + "/" + den.str());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": invalid JSON: " + e.what());
  }
}

PerfParams parse_perf_params(const json& j, PerfParams base) {
  require_object(j, "perf");
  check_keys(j,
             {"alpha_net_network", "alpha_net_other", "beta_mig", "rho_remote", "mem_sensitivity",
              "domain_bandwidth_gbps", "_note"},
             "perf");
  if (j.contains("alpha_net_network")) {
    base.alpha_net_network = json_to_rational(j.at("alpha_net_network"), "perf.alpha_net_network");
  }
  if (j.contains("alpha_net_other")) {
    base.alpha_net_other = json_to_rational(j.at("alpha_net_other"), "perf.alpha_net_other");
  }
  merge_profile_map(j, "beta_mig", base.beta_mig, "perf");
  merge_profile_map(j, "rho_remote", base.rho_remote, "perf");
  merge_profile_map(j, "mem_sensitivity", base.mem_sensitivity, "perf");
  if (j.contains("domain_bandwidth_gbps")) {
    base.domain_bandwidth_gbps =
        json_to_rational(j.at("domain_bandwidth_gbps"), "perf.domain_bandwidth_gbps");
  }
  base.validate();
  return base;
}

PerfParams load_perf_params_file(const std::string& path) {
  return parse_perf_params(parse_json_text(read_text_file(path), path));
}

nlohmann::ordered_json perf_params_to_json(const PerfParams& params) {
  nlohmann::ordered_json out;
  out["alpha_net_network"] = rational_to_json(params.alpha_net_network);
  out["alpha_net_other"] = rational_to_json(params.alpha_net_other);
  out["beta_mig"] = profile_map_to_json(params.beta_mig);
  out["rho_remote"] = profile_map_to_json(params.rho_remote);
  out["mem_sensitivity"] = profile_map_to_json(params.mem_sensitivity);
  out["domain_bandwidth_gbps"] = rational_to_json(params.domain_bandwidth_gbps);
  return out;
}

namespace {

ClusterConfig parse_cluster(const json& j) {
  require_object(j, "cluster");
  check_keys(j,
             {"worker_nodes", "sockets_per_node", "cores_per_socket", "reserved_cores_per_socket",
              "memory_gib", "memory_bytes", "domain_bandwidth_gbps"},
             "cluster");
  ClusterConfig c;
  c.worker_nodes = static_cast<int>(get_int(j, "worker_nodes", c.worker_nodes, "cluster"));
  c.sockets_per_node =
      static_cast<int>(get_int(j, "sockets_per_node", c.sockets_per_node, "cluster"));
  c.cores_per_socket =
      static_cast<int>(get_int(j, "cores_per_socket", c.cores_per_socket, "cluster"));
  c.reserved_cores_per_socket = static_cast<int>(
      get_int(j, "reserved_cores_per_socket", c.reserved_cores_per_socket, "cluster"));
  if (j.contains("memory_gib") && j.contains("memory_bytes")) {
    throw ConfigError("cluster: give memory_gib or memory_bytes, not both");
  }
  if (j.contains("memory_gib")) {
    c.memory_bytes = get_int(j, "memory_gib", 0, "cluster") * kBytesPerGiB;
  } else {
    c.memory_bytes = get_int(j, "memory_bytes", c.memory_bytes, "cluster");
  }
  if (j.contains("domain_bandwidth_gbps")) {
    c.domain_bandwidth_gbps =
        json_to_rational(j.at("domain_bandwidth_gbps"), "cluster.domain_bandwidth_gbps");
  }
  return c;
}

KubeletPolicy parse_kubelet(const json& j) {
  require_object(j, "kubelet");
  check_keys(j, {"cpu_manager", "topology_manager"}, "kubelet");
  KubeletPolicy k;
  if (j.contains("cpu_manager")) {
    k.cpu_manager = cpu_manager_policy_from_name(require_string(j, "cpu_manager", "kubelet"));
  }
  if (j.contains("topology_manager")) {
    k.topology_manager =
        topology_manager_policy_from_name(require_string(j, "topology_manager", "kubelet"));
  }
  return k;
}

std::vector<BenchmarkDef> parse_benchmarks(const json& j) {
  if (!j.is_array()) throw ConfigError("benchmarks must be an array");
  std::vector<BenchmarkDef> out;
  for (const auto& entry : j) {
    require_object(entry, "benchmarks[]");
    check_keys(entry,
               {"name", "profile", "n_tasks", "base_runtime_s", "per_process_bandwidth_gbps",
                "cpu_millicores", "memory_gib", "memory_bytes", "default_n_workers"},
               "benchmarks[]");
    BenchmarkDef b;
    b.name = require_string(entry, "name", "benchmarks[]");
    b.profile = profile_from_name(require_string(entry, "profile", "benchmarks[]"));
    b.n_tasks = static_cast<int>(get_int(entry, "n_tasks", 16, "benchmarks[]"));
    if (!entry.contains("base_runtime_s")) {
      throw ConfigError("benchmark " + b.name + ": base_runtime_s is required");
    }
    b.base_runtime_s = json_to_rational(entry.at("base_runtime_s"), b.name + ".base_runtime_s");
    if (entry.contains("per_process_bandwidth_gbps")) {
      b.per_process_bandwidth_gbps = json_to_rational(entry.at("per_process_bandwidth_gbps"),
                                                      b.name + ".per_process_bandwidth_gbps");
    }
    std::int64_t cpu = get_int(entry, "cpu_millicores", 16 * kMillicoresPerCpu, "benchmarks[]");
    std::int64_t mem;
    if (entry.contains("memory_gib") && entry.contains("memory_bytes")) {
      throw ConfigError("benchmark " + b.name + ": give memory_gib or memory_bytes, not both");
    }
    if (entry.contains("memory_gib")) {
      mem = get_int(entry, "memory_gib", 0, "benchmarks[]") * kBytesPerGiB;
    } else {
      mem = get_int(entry, "memory_bytes", 32 * kBytesPerGiB, "benchmarks[]");
    }
    b.total_resources = {cpu, mem};
    b.default_n_workers = static_cast<int>(get_int(entry, "default_n_workers", 1, "benchmarks[]"));
    out.push_back(std::move(b));
  }
  return out;
}

WorkloadSpec parse_workload(const json& j) {
  require_object(j, "workload");
  check_keys(j,
             {"generator", "preset", "arrivals", "benchmark", "count", "interval_s", "repeats",
              "window_s"},
             "workload");
  WorkloadSpec w;
  std::string generator;
  if (j.contains("generator")) generator = require_string(j, "generator", "workload");
  if (j.contains("preset")) {
    // Convenience spelling: the built-in workload recipes by preset name.
    const std::string preset = require_string(j, "preset", "workload");
    if (preset == "exp1") {
      generator = "steady";
    } else if (preset == "exp2" || preset == "exp3") {
      generator = "burst-mix";
    } else {
      throw ConfigError("workload.preset '" + preset + "' unknown (expected exp1, exp2 or exp3)");
    }
  }
  w.generator = generator;
  if (j.contains("benchmark")) w.benchmark = require_string(j, "benchmark", "workload");
  w.count = static_cast<int>(get_int(j, "count", w.count, "workload"));
  if (j.contains("interval_s")) {
    w.interval_s = json_to_rational(j.at("interval_s"), "workload.interval_s");
  }
  w.repeats = static_cast<int>(get_int(j, "repeats", w.repeats, "workload"));
  if (j.contains("window_s")) {
    w.window_s = json_to_rational(j.at("window_s"), "workload.window_s");
  }
  if (j.contains("arrivals")) {
    if (!j.at("arrivals").is_array()) throw ConfigError("workload.arrivals must be an array");
    for (const auto& entry : j.at("arrivals")) {
      require_object(entry, "workload.arrivals[]");
      check_keys(entry, {"benchmark", "submit_s"}, "workload.arrivals[]");
      Arrival a;
      a.benchmark = require_string(entry, "benchmark", "workload.arrivals[]");
      if (entry.contains("submit_s")) {
        a.submit_time_s = json_to_rational(entry.at("submit_s"), "workload.arrivals[].submit_s");
      }
      w.arrivals.push_back(std::move(a));
    }
  }
  return w;
}

}  // namespace

ScenarioSpec parse_scenario_json(const json& j) {
  require_object(j, "scenario");
  check_keys(j,
             {"name", "mode", "cluster", "kubelet", "planner", "scheduler", "perf", "workload",
              "benchmarks"},
             "scenario");
  ScenarioSpec s;
  if (j.contains("mode")) s.name = "";  // apply_mode fills it below
  if (j.contains("benchmarks")) s.benchmarks = parse_benchmarks(j.at("benchmarks"));
  if (j.contains("cluster")) s.cluster = parse_cluster(j.at("cluster"));
  if (j.contains("mode")) apply_mode(s, require_string(j, "mode", "scenario"));
  if (j.contains("kubelet")) s.kubelet = parse_kubelet(j.at("kubelet"));
  if (j.contains("planner")) {
    s.planner = granularity_policy_from_name(require_string(j, "planner", "scenario"));
  }
  if (j.contains("scheduler")) {
    s.scheduler = scheduler_mode_from_name(require_string(j, "scheduler", "scenario"));
  }
  if (j.contains("perf")) s.perf = parse_perf_params(j.at("perf"), s.perf);
  if (j.contains("workload")) {
    s.workload = parse_workload(j.at("workload"));
  } else {
    throw ConfigError("scenario: workload section is required");
  }
  if (j.contains("name")) s.name = require_string(j, "name", "scenario");
  if (s.name.empty()) s.name = "custom";
  s.validate();
  return s;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  return parse_scenario_json(parse_json_text(read_text_file(path), path));
}

}  // namespace grainsched
