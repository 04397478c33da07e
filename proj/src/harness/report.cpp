// Copyright 2026 The IMD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "imd/harness/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace imd::harness {

namespace {

std::string fmt_double(double v, const char* format = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void write_row(std::ostream& out, const RunRecord& r) {
  out << r.run_id << ',' << r.seed << ',' << fmt_double(r.t) << ',' << fmt_double(r.gap)
      << ',' << fmt_double(r.bound) << ',' << fmt_double(r.feasibility_violation) << ','
      << fmt_double(r.wall_time, "%.6f") << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : result.runs) write_row(out, r);
  for (const RunRecord& r : result.aggregates) write_row(out, r);
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  write_csv(out, result);
  return out.str();
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(1, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ConfigError(1, "unexpected CSV header '" + line + "'");
  std::vector<RunRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw ConfigError(line_no, "expected 7 CSV fields");
    try {
      RunRecord r;
      r.run_id = f[0];
      r.seed = std::stoull(f[1]);
      r.t = std::stod(f[2]);
      r.gap = std::stod(f[3]);
      r.bound = std::stod(f[4]);
      r.feasibility_violation = std::stod(f[5]);
      r.wall_time = std::stod(f[6]);
      out.push_back(std::move(r));
    } catch (const std::exception&) {
      throw ConfigError(line_no, "malformed CSV number");
    }
  }
  if (out.empty()) throw ConfigError(line_no, "CSV has no records");
  return out;
}

int print_summary(std::ostream& out, const std::string& title,
                  const std::vector<CheckpointSummary>& summary) {
  out << "experiment " << title << '\n';
  char buf[256];
  std::snprintf(buf, sizeof buf, "%12s %14s %14s %10s %12s  %s\n", "t", "mean_gap", "bound",
                "ratio", "feas_viol", "status");
  out << buf;
  bool all_pass = true;
  for (const CheckpointSummary& s : summary) {
    std::snprintf(buf, sizeof buf, "%12.6g %14.6e %14.6e %10.4f %12.3e  %s\n", s.t,
                  s.mean_gap, s.bound, s.ratio, s.max_violation, s.pass ? "PASS" : "FAIL");
    out << buf;
    all_pass = all_pass && s.pass;
  }
  if (all_pass) {
    out << "all checkpoints within bound\n";
  } else {
    for (const CheckpointSummary& s : summary) {
      if (!s.pass) out << "FAILED checkpoint t = " << fmt_double(s.t, "%.10g") << '\n';
    }
  }
  return all_pass ? 0 : 1;
}

int report(const ExperimentResult& result, const ExperimentConfig& config, std::ostream& out) {
  std::ofstream file(config.output_path);
  if (!file) throw OutputError("cannot write '" + config.output_path + "'");
  write_csv(file, result);
  file.close();
  if (!file) throw OutputError("failed writing '" + config.output_path + "'");
  out << "wrote " << config.output_path << " (" << result.runs.size() << " run rows, "
      << result.aggregates.size() << " aggregate rows)\n";
  return print_summary(out, config.experiment_id, result.summary);
}

}  // namespace imd::harness
