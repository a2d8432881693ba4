#include "grainsched/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "grainsched/controller.hpp"
#include "grainsched/errors.hpp"
#include "grainsched/log.hpp"
#include "grainsched/planner.hpp"
#include "grainsched/scheduler.hpp"

namespace grainsched {

namespace {

std::string join_ints(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string describe_assignment(const CpuAssignment& a) {
  std::string detail = a.mode == CpuMode::Exclusive ? "mode=exclusive" : "mode=shared";
  detail += ";cpus=" + join_ints(a.cpu_ids);
  if (a.domain_spread.empty()) {
    detail += ";domains=-";
  } else {
    detail += ";domains=";
    bool first = true;
    for (const auto& [d, k] : a.domain_spread) {
      if (!first) detail += ',';
      detail += std::to_string(d) + ":" + std::to_string(k);
      first = false;
    }
  }
  return detail;
}

struct RunningJob {
  JobSpec spec;
  std::vector<PodRecord> pods;               // launcher first
  std::vector<WorkerPlacement> workers;      // worker pods only
  Rational remaining;                        // base-runtime seconds of work left
  Rational slowdown = 1;
  SlowdownBreakdown breakdown;
  Rational start_time_s;
  std::int64_t sequence = 0;
  bool rate_known = false;
};

class Engine {
 public:
  Engine(const ScenarioSpec& scenario, std::uint64_t seed)
      : scenario_(scenario),
        seed_(seed),
        cluster_(make_cluster(scenario.cluster)),
        scheduler_rng_(splitmix64(2 * seed + 1)) {}

  SimReport run() {
    prepare();
    loop(/*replay=*/nullptr);
    return finish();
  }

  SimReport run_replay(const std::vector<ReplayJob>& plan) {
    prepare();
    std::vector<ReplayJob> sorted = plan;
    std::sort(sorted.begin(), sorted.end(), [](const ReplayJob& a, const ReplayJob& b) {
      if (a.start_time_s != b.start_time_s) return a.start_time_s < b.start_time_s;
      return a.job_id < b.job_id;
    });
    // Replay drops every job not named in the plan and pins the rest.
    std::map<std::string, const JobSpec*> by_id;
    for (const auto& j : arrivals_) by_id[j.job_id] = &j;
    for (const auto& r : sorted) {
      auto it = by_id.find(r.job_id);
      if (it == by_id.end()) {
        throw ConfigError("replay plan names unknown job '" + r.job_id + "'");
      }
      if (r.start_time_s < it->second->submit_time_s) {
        throw ConfigError("replay plan starts job '" + r.job_id + "' before submission");
      }
    }
    loop(&sorted);
    return finish();
  }

 private:
  void prepare() {
    scenario_.validate();
    arrivals_ = resolve_arrivals(scenario_, seed_);
    // Plans and pod sets depend only on the scenario; building them all
    // up front surfaces config errors before any simulated time passes.
    const int max_nodes = cluster_.worker_node_count();
    for (const auto& job : arrivals_) {
      PendingJob p;
      p.job = job;
      p.plan = select_granularity(job, max_nodes, scenario_.planner);
      p.pods = build_pod_set(job, p.plan);
      prebuilt_.push_back(std::move(p));
    }
    GS_LOG_INFO("scenario %s seed %llu: %zu arrivals", scenario_.name.c_str(),
                static_cast<unsigned long long>(seed_), arrivals_.size());
  }

  void trace(const Rational& t, std::string event, std::string job, std::string pod,
             std::string node, std::string detail) {
    report_.event_trace.push_back({t, std::move(event), std::move(job), std::move(pod),
                                   std::move(node), std::move(detail)});
  }

  void admit_replay_job(const ReplayJob& entry) {
    const PendingJob* src = nullptr;
    for (const auto& p : prebuilt_) {
      if (p.job.job_id == entry.job_id) src = &p;
    }
    if (!src) throw ConfigError("replay plan names unknown job '" + entry.job_id + "'");

    RunningJob rj;
    rj.spec = src->job;
    rj.remaining = src->job.base_runtime_s;
    rj.start_time_s = now_;
    rj.sequence = next_sequence_++;
    trace(now_, "admit", rj.spec.job_id, "", "",
          "workers=" + std::to_string(entry.pods.size() - 1) + ";replay=1");
    for (const auto& pr : entry.pods) {
      const PodSpec& pod = src->pods.find_pod(pr.pod_id);
      admit_pod_with_assignment(pod, pr.group_id, pr.assignment, cluster_.find(pr.node_id));
      trace(now_, "bind", rj.spec.job_id, pr.pod_id, pr.node_id,
            "group=" + std::to_string(pr.group_id) + ";" + describe_assignment(pr.assignment));
      rj.pods.push_back(pr);
      if (pr.role == PodRole::Worker) {
        rj.workers.push_back({pr.node_id, pr.assignment, pr.n_tasks});
      }
    }
    trace(now_, "start", rj.spec.job_id, "", "",
          "base_runtime_s=" + format_decimal(rj.spec.base_runtime_s, 9));
    running_.push_back(std::move(rj));
  }

  void admit_scheduled_jobs() {
    auto results = gang_admit(pending_, cluster_, scenario_.scheduler, scenario_.kubelet,
                              scheduler_rng_);
    for (auto& [job_id, outcome] : results) {
      if (!outcome.scheduled) {
        trace(now_, "blocked", job_id, "", "", "reason=" + outcome.reason);
        continue;
      }
      const PendingJob* src = nullptr;
      for (const auto& p : prebuilt_) {
        if (p.job.job_id == job_id) src = &p;
      }
      if (!src) throw InternalError("admitted job '" + job_id + "' has no prebuilt pods");

      RunningJob rj;
      rj.spec = src->job;
      rj.remaining = src->job.base_runtime_s;
      rj.start_time_s = now_;
      rj.sequence = next_sequence_++;
      trace(now_, "admit", job_id, "", "",
            "workers=" + std::to_string(src->pods.workers.size()) +
                ";groups=" + std::to_string(src->plan.n_groups));
      for (const auto& placement : outcome.placements) {
        const PodSpec& pod = src->pods.find_pod(placement.pod_id);
        PodRecord pr{placement.pod_id, pod.role,        placement.node_id,
                     placement.group_id, placement.n_tasks, placement.assignment};
        trace(now_, "bind", job_id, placement.pod_id, placement.node_id,
              "group=" + std::to_string(placement.group_id) + ";" +
                  describe_assignment(placement.assignment));
        if (pod.role == PodRole::Worker) {
          rj.workers.push_back({placement.node_id, placement.assignment, placement.n_tasks});
        }
        rj.pods.push_back(std::move(pr));
      }
      trace(now_, "start", job_id, "", "",
            "base_runtime_s=" + format_decimal(rj.spec.base_runtime_s, 9));
      running_.push_back(std::move(rj));
    }
  }

  // Quasi-static model: after every admission or completion, every running
  // job's rate is refreshed from current placements and cluster-wide demand.
  void refresh_slowdowns() {
    std::vector<JobPlacement> views;
    views.reserve(running_.size());
    for (const auto& rj : running_) views.push_back({&rj.spec, rj.workers});
    const DomainDemand demand = compute_domain_demand(views, cluster_);
    for (size_t i = 0; i < running_.size(); ++i) {
      RunningJob& rj = running_[i];
      SlowdownBreakdown bd = job_slowdown(views[i], demand, cluster_, scenario_.perf);
      Rational total = bd.total();
      if (!rj.rate_known || total != rj.slowdown) {
        trace(now_, "rate", rj.spec.job_id, "", "",
              "slowdown=" + format_decimal(total, 12) + ";net=" + format_decimal(bd.s_net, 12) +
                  ";cpu=" + format_decimal(bd.s_cpu, 12) + ";mem=" + format_decimal(bd.s_mem, 12) +
                  ";remote=" + format_decimal(bd.s_remote, 12));
      }
      rj.slowdown = total;
      rj.breakdown = bd;
      rj.rate_known = true;
    }
  }

  void complete_job(RunningJob& rj) {
    for (const auto& pr : rj.pods) release_pod(pr.pod_id, cluster_.find(pr.node_id));
    JobRecord rec;
    rec.job_id = rj.spec.job_id;
    rec.benchmark = rj.spec.benchmark;
    rec.profile = rj.spec.profile;
    rec.n_tasks = rj.spec.n_tasks;
    rec.submit_time_s = rj.spec.submit_time_s;
    rec.start_time_s = rj.start_time_s;
    rec.finish_time_s = now_;
    rec.pods = rj.pods;
    trace(now_, "complete", rj.spec.job_id, "", "",
          "wait_s=" + format_decimal(rec.wait_s(), 9) + ";run_s=" + format_decimal(rec.run_s(), 9) +
              ";response_s=" + format_decimal(rec.response_s(), 9));
    report_.records.push_back(std::move(rec));
  }

  void loop(const std::vector<ReplayJob>* replay) {
    size_t arrival_idx = 0;
    size_t replay_idx = 0;
    const bool replaying = replay != nullptr;

    while (true) {
      // Next due instant: the earliest upcoming submission (or pinned start
      // in replay) and the earliest predicted completion.
      bool have_next = false;
      Rational t_next;
      auto consider = [&](const Rational& t) {
        if (!have_next || t < t_next) {
          t_next = t;
          have_next = true;
        }
      };
      if (replaying) {
        if (replay_idx < replay->size()) consider((*replay)[replay_idx].start_time_s);
      } else {
        if (arrival_idx < arrivals_.size()) consider(arrivals_[arrival_idx].submit_time_s);
      }
      for (const auto& rj : running_) consider(now_ + rj.remaining * rj.slowdown);

      if (!have_next) {
        if (!pending_.empty()) {
          throw ConfigError("job '" + pending_.front().job.job_id +
                            "' can never be scheduled: cluster too small for its pods");
        }
        break;
      }

      const Rational dt = t_next - now_;
      if (dt < 0) throw InternalError("time went backwards in event loop");
      for (auto& rj : running_) rj.remaining -= dt / rj.slowdown;
      now_ = t_next;

      // Completions first so a simultaneous arrival sees the freed capacity.
      std::vector<size_t> done;
      for (size_t i = 0; i < running_.size(); ++i) {
        if (running_[i].remaining == 0) done.push_back(i);
      }
      std::sort(done.begin(), done.end(), [&](size_t a, size_t b) {
        return running_[a].sequence < running_[b].sequence;
      });
      for (size_t idx : done) complete_job(running_[idx]);
      if (!done.empty()) {
        std::set<std::int64_t> done_seq;
        for (size_t idx : done) done_seq.insert(running_[idx].sequence);
        std::erase_if(running_, [&](const RunningJob& rj) {
          return done_seq.count(rj.sequence) > 0;
        });
      }

      if (replaying) {
        while (replay_idx < replay->size() &&
               (*replay)[replay_idx].start_time_s == now_) {
          admit_replay_job((*replay)[replay_idx]);
          ++replay_idx;
        }
      } else {
        while (arrival_idx < arrivals_.size() &&
               arrivals_[arrival_idx].submit_time_s == now_) {
          const JobSpec& job = arrivals_[arrival_idx];
          trace(now_, "submit", job.job_id, "", "",
                "benchmark=" + job.benchmark + ";profile=" + profile_name(job.profile) +
                    ";n_tasks=" + std::to_string(job.n_tasks));
          pending_.push_back(prebuilt_[arrival_idx]);
          ++arrival_idx;
        }
        admit_scheduled_jobs();
      }

      refresh_slowdowns();
      cluster_.check_invariants();
    }
  }

  SimReport finish() {
    std::sort(report_.records.begin(), report_.records.end(),
              [](const JobRecord& a, const JobRecord& b) {
                if (a.submit_time_s != b.submit_time_s) return a.submit_time_s < b.submit_time_s;
                return a.job_id < b.job_id;
              });
    report_.scenario_name = scenario_.name;
    report_.seed = seed_;
    if (!report_.records.empty()) {
      auto [response, makespan] = compute_metrics(report_.records);
      report_.overall_response_s = response;
      report_.makespan_s = makespan;
    }
    GS_LOG_INFO("scenario %s seed %llu: %zu jobs finished", scenario_.name.c_str(),
                static_cast<unsigned long long>(seed_), report_.records.size());
    return std::move(report_);
  }

  ScenarioSpec scenario_;
  std::uint64_t seed_;
  ClusterState cluster_;
  std::mt19937_64 scheduler_rng_;
  std::vector<JobSpec> arrivals_;
  std::vector<PendingJob> prebuilt_;
  std::deque<PendingJob> pending_;
  std::vector<RunningJob> running_;
  Rational now_ = 0;
  std::int64_t next_sequence_ = 0;
  SimReport report_;
};

}  // namespace

std::pair<Rational, Rational> compute_metrics(const std::vector<JobRecord>& records) {
  if (records.empty()) throw ConfigError("compute_metrics: no job records");
  Rational total_response = 0;
  Rational first_submit = records.front().submit_time_s;
  Rational last_finish = records.front().finish_time_s;
  for (const auto& r : records) {
    if (r.submit_time_s < 0 || r.start_time_s < r.submit_time_s ||
        r.finish_time_s < r.start_time_s) {
      throw InternalError("job record " + r.job_id + " has inconsistent timestamps");
    }
    total_response += r.response_s();
    first_submit = std::min(first_submit, r.submit_time_s);
    last_finish = std::max(last_finish, r.finish_time_s);
  }
  return {total_response, last_finish - first_submit};
}

SimReport run_simulation(const ScenarioSpec& scenario, std::uint64_t seed) {
  return Engine(scenario, seed).run();
}

std::vector<ReplayJob> replay_plan_from_report(const SimReport& report) {
  std::vector<ReplayJob> plan;
  for (const auto& r : report.records) {
    plan.push_back({r.job_id, r.start_time_s, r.pods});
  }
  return plan;
}

SimReport run_simulation_replay(const ScenarioSpec& scenario, std::uint64_t seed,
                                const std::vector<ReplayJob>& plan) {
  return Engine(scenario, seed).run_replay(plan);
}

}  // namespace grainsched
