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

#ifndef IMD_HARNESS_REPORT_HPP
#define IMD_HARNESS_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "imd/harness/experiment.hpp"

namespace imd::harness {

inline constexpr const char* kCsvHeader =
    "run_id,seed,t,gap,bound,feasibility_violation,wall_time";

class OutputError : public Error {
 public:
  using Error::Error;
};

/// Header, then per-run rows, then the aggregate rows. Numbers are printed
/// with 17 significant digits so the file round-trips exactly.
void write_csv(std::ostream& out, const ExperimentResult& result);
std::string to_csv(const ExperimentResult& result);

/// Parses a file produced by write_csv; throws ConfigError on malformed rows.
std::vector<RunRecord> read_csv(std::istream& in);

/// Prints one line per checkpoint and returns the exit code: 0 if every
/// checkpoint passed, 1 otherwise.
int print_summary(std::ostream& out, const std::string& title,
                  const std::vector<CheckpointSummary>& summary);

/// Writes the CSV to config.output_path (throws OutputError when that is not
/// writable), prints the summary, returns the exit code.
int report(const ExperimentResult& result, const ExperimentConfig& config, std::ostream& out);

}  // namespace imd::harness

#endif  // IMD_HARNESS_REPORT_HPP
