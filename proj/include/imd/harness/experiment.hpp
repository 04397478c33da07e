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

#ifndef IMD_HARNESS_EXPERIMENT_HPP
#define IMD_HARNESS_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "imd/baselines.hpp"
#include "imd/harness/config.hpp"

namespace imd::harness {

inline constexpr const char* kAggregateRunId = "mean";

/// Relative slack on bound comparisons for continuous runs, which only
/// cover time-discretization error.
inline constexpr double kContinuousBoundSlack = 1e-3;

struct CheckpointSummary {
  double t = 0.0;
  double mean_gap = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double max_violation = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  /// Per-replication records, ordered by replication index then t.
  std::vector<RunRecord> runs;
  /// One row per checkpoint: run_id "mean", mean gap, the bound, the worst
  /// feasibility violation and the mean wall time.
  std::vector<RunRecord> aggregates;
  std::vector<CheckpointSummary> summary;
  double bound_slack = 0.0;
};

/// A run failed; the message names the replication.
class RunError : public Error {
 public:
  using Error::Error;
};

/// Replication r uses seed base_seed + r. Results do not depend on
/// `threads`. Continuous runs are deterministic and execute once.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads);
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, config.threads);
}

/// Mean gap per checkpoint over the given per-run records. A checkpoint
/// passes when mean_gap <= bound * (1 + slack) and every iterate satisfied
/// the feasibility tolerance.
std::vector<CheckpointSummary> summarize(const std::vector<RunRecord>& runs, double slack);

}  // namespace imd::harness

#endif  // IMD_HARNESS_EXPERIMENT_HPP
