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

#include "imd/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace imd::harness {

namespace {

std::vector<RunRecord> run_discrete(const ExperimentConfig& config, int threads) {
  const DiscreteSetup setup = build_discrete(config);
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<std::vector<RunRecord>> per_run(reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      RunOptions options;
      options.horizon = setup.horizon;
      options.checkpoints = setup.checkpoints;
      options.seed = config.base_seed + r;
      options.run_id = std::to_string(r);
      options.bound = setup.bound;
      try {
        per_run[r] = run_algorithm(config.algorithm, setup.problem, setup.map,
                                   setup.schedule, options, setup.baseline)
                         .records;
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(
              RunError("replication " + std::to_string(r) + " (seed " +
                       std::to_string(options.seed) + "): " + e.what()));
        }
      }
    }
  };

  const int workers = std::max(1, std::min<int>(threads, config.replications));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunRecord> runs;
  runs.reserve(reps * setup.checkpoints.size());
  for (auto& records : per_run) {
    for (auto& rec : records) runs.push_back(std::move(rec));
  }
  return runs;
}

std::vector<RunRecord> run_continuous(const ExperimentConfig& config) {
  const ContinuousSetup setup = build_continuous(config);
  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  try {
    traj = integrate(setup.system, setup.options);
  } catch (const std::exception& e) {
    throw RunError(std::string("continuous run 0: ") + e.what());
  }
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::vector<RunRecord> runs;
  std::size_t i = 0;
  for (double c : config.checkpoints) {
    // First grid time at or past the checkpoint.
    const double eps = 1e-9 * std::max(1.0, std::abs(c));
    while (i + 1 < traj.size() && traj.times[i] < c - eps) ++i;
    RunRecord r;
    r.run_id = "0";
    r.seed = config.base_seed;
    r.t = traj.times[i];
    r.gap = traj.gap_path[i];
    r.bound = setup.V_at_xstar / traj.times[i];
    r.feasibility_violation = 0.0;
    r.wall_time = wall;
    runs.push_back(r);
  }
  return runs;
}

}  // namespace

std::vector<CheckpointSummary> summarize(const std::vector<RunRecord>& runs, double slack) {
  struct Acc {
    double gap_sum = 0.0;
    double bound = 0.0;
    double violation = 0.0;
    std::size_t count = 0;
  };
  std::map<double, Acc> by_t;
  for (const RunRecord& r : runs) {
    if (r.run_id == kAggregateRunId) continue;
    Acc& a = by_t[r.t];
    if (a.count == 0) a.bound = r.bound;
    a.gap_sum += r.gap;
    a.violation = std::max(a.violation, r.feasibility_violation);
    ++a.count;
  }
  std::vector<CheckpointSummary> out;
  for (const auto& [t, a] : by_t) {
    CheckpointSummary s;
    s.t = t;
    s.mean_gap = a.gap_sum / static_cast<double>(a.count);
    s.bound = a.bound;
    s.ratio = s.mean_gap / s.bound;
    s.max_violation = a.violation;
    const bool bound_ok = std::isnan(s.bound) || s.mean_gap <= s.bound * (1.0 + slack);
    s.pass = bound_ok && s.max_violation <= kFeasibilityTol;
    out.push_back(s);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  ExperimentResult result;
  if (config.mode == Mode::Discrete) {
    result.runs = run_discrete(config, threads);
    result.bound_slack = 0.0;
  } else {
    result.runs = run_continuous(config);
    result.bound_slack = kContinuousBoundSlack;
  }
  result.summary = summarize(result.runs, result.bound_slack);

  std::map<double, std::pair<double, std::size_t>> wall;
  for (const RunRecord& r : result.runs) {
    auto& [sum, n] = wall[r.t];
    sum += r.wall_time;
    ++n;
  }
  for (const CheckpointSummary& s : result.summary) {
    RunRecord agg;
    agg.run_id = kAggregateRunId;
    agg.seed = config.base_seed;
    agg.t = s.t;
    agg.gap = s.mean_gap;
    agg.bound = s.bound;
    agg.feasibility_violation = s.max_violation;
    const auto& [sum, n] = wall[s.t];
    agg.wall_time = sum / static_cast<double>(n);
    result.aggregates.push_back(agg);
  }
  return result;
}

}  // namespace imd::harness
