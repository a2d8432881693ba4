#pragma once

#include <string>

#include <json.hpp>

#include "grainsched/engine.hpp"

namespace grainsched {

// Machine-readable report. Times appear twice: exact decimal strings (the
// reference representation) and convenience doubles suffixed "_approx".
nlohmann::ordered_json report_to_json(const SimReport& report);
std::string report_json_text(const SimReport& report);

// One row per job: job, benchmark, profile, n_tasks, submit, start, finish,
// wait, run, response (seconds, 9 decimal places).
std::string report_csv_text(const SimReport& report);

// One row per pod: job, pod, node, start_s, end_s.
std::string gantt_csv_text(const SimReport& report);

// Event log: "t=<s> event=<e> job=<j> pod=<p> node=<n> detail=<d>" per line,
// "-" for empty fields.
std::string trace_text(const SimReport& report);

// Writes report.<json|csv>, trace.log and gantt.csv under out_dir (created
// if missing). `format` is "json" or "csv".
void write_report_files(const SimReport& report, const std::string& out_dir,
                        const std::string& format);

}  // namespace grainsched
