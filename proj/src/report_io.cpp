#include "grainsched/report_io.hpp"

#include <filesystem>

#include "grainsched/errors.hpp"
#include "grainsched/scenario_io.hpp"

namespace grainsched {

namespace {

std::string fmt_time(const Rational& t) { return format_decimal(t, 9); }

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

}  // namespace

nlohmann::ordered_json report_to_json(const SimReport& report) {
  nlohmann::ordered_json out;
  out["schema"] = "grainsched-report/1";
  out["scenario"] = report.scenario_name;
  out["seed"] = report.seed;
  out["metrics"] = {
      {"overall_response_s", fmt_time(report.overall_response_s)},
      {"overall_response_s_approx", to_double(report.overall_response_s)},
      {"makespan_s", fmt_time(report.makespan_s)},
      {"makespan_s_approx", to_double(report.makespan_s)},
      {"jobs", report.records.size()},
  };
  nlohmann::ordered_json jobs = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json pods = nlohmann::ordered_json::array();
    for (const auto& p : r.pods) {
      nlohmann::ordered_json pod;
      pod["pod"] = p.pod_id;
      pod["role"] = p.role == PodRole::Launcher ? "launcher" : "worker";
      pod["node"] = p.node_id;
      pod["group"] = p.group_id;
      pod["n_tasks"] = p.n_tasks;
      pod["cpu_mode"] = p.assignment.mode == CpuMode::Exclusive ? "exclusive" : "shared";
      pod["cpu_ids"] = p.assignment.cpu_ids;
      nlohmann::ordered_json spread = nlohmann::ordered_json::object();
      for (const auto& [d, k] : p.assignment.domain_spread) spread[std::to_string(d)] = k;
      pod["domain_spread"] = spread;
      pods.push_back(std::move(pod));
    }
    nlohmann::ordered_json job;
    job["job"] = r.job_id;
    job["benchmark"] = r.benchmark;
    job["profile"] = profile_name(r.profile);
    job["n_tasks"] = r.n_tasks;
    job["submit_s"] = fmt_time(r.submit_time_s);
    job["start_s"] = fmt_time(r.start_time_s);
    job["finish_s"] = fmt_time(r.finish_time_s);
    job["wait_s"] = fmt_time(r.wait_s());
    job["run_s"] = fmt_time(r.run_s());
    job["response_s"] = fmt_time(r.response_s());
    job["pods"] = std::move(pods);
    jobs.push_back(std::move(job));
  }
  out["jobs"] = std::move(jobs);
  return out;
}

std::string report_json_text(const SimReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string report_csv_text(const SimReport& report) {
  std::string out =
      "job,benchmark,profile,n_tasks,submit_s,start_s,finish_s,wait_s,run_s,response_s\n";
  for (const auto& r : report.records) {
    out += r.job_id + "," + r.benchmark + "," + profile_name(r.profile) + "," +
           std::to_string(r.n_tasks) + "," + fmt_time(r.submit_time_s) + "," +
           fmt_time(r.start_time_s) + "," + fmt_time(r.finish_time_s) + "," +
           fmt_time(r.wait_s()) + "," + fmt_time(r.run_s()) + "," + fmt_time(r.response_s()) +
           "\n";
  }
  return out;
}

std::string gantt_csv_text(const SimReport& report) {
  std::string out = "job,pod,node,start_s,end_s\n";
  for (const auto& r : report.records) {
    for (const auto& p : r.pods) {
      out += r.job_id + "," + p.pod_id + "," + p.node_id + "," + fmt_time(r.start_time_s) + "," +
             fmt_time(r.finish_time_s) + "\n";
    }
  }
  return out;
}

std::string trace_text(const SimReport& report) {
  std::string out;
  for (const auto& e : report.event_trace) {
    out += "t=" + fmt_time(e.time_s) + " event=" + or_dash(e.event) + " job=" + or_dash(e.job) +
           " pod=" + or_dash(e.pod) + " node=" + or_dash(e.node) + " detail=" + or_dash(e.detail) +
           "\n";
  }
  return out;
}

void write_report_files(const SimReport& report, const std::string& out_dir,
                        const std::string& format) {
  if (format != "json" && format != "csv") {
    throw ConfigError("unknown report format '" + format + "' (expected json or csv)");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

  const std::string base = out_dir + "/";
  if (format == "json") {
    write_text_file(base + "report.json", report_json_text(report));
  } else {
    write_text_file(base + "report.csv", report_csv_text(report));
  }
  write_text_file(base + "trace.log", trace_text(report));
  write_text_file(base + "gantt.csv", gantt_csv_text(report));
}

}  // namespace grainsched
