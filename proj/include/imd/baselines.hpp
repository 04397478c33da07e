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

#ifndef IMD_BASELINES_HPP
#define IMD_BASELINES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imd/discrete.hpp"
#include "imd/oracles.hpp"

namespace imd {

enum class Algorithm { IMD, DualAveragingMD, ProjectedSGD, DiscreteHeavyBall };

Algorithm algorithm_from_string(std::string_view name);
std::string_view to_string(Algorithm a);

/// One checkpoint of one run. `feasibility_violation` is the largest
/// violation over all iterates x_0..x_t, not just x_t.
struct RunRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  /// Step count for discrete runs, time for continuous ones.
  double t = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  double feasibility_violation = 0.0;
  double wall_time = 0.0;
};

struct RunOptions {
  std::int64_t horizon = 1;
  /// Sorted, each in [1, horizon].
  std::vector<std::int64_t> checkpoints;
  std::uint64_t seed = 0;
  std::string run_id = "0";
  /// When set, every record carries theorem1_bound(t, *bound).
  std::optional<BoundParams> bound;
};

struct RunOutput {
  std::vector<RunRecord> records;
  Point final_x;
  double max_violation = 0.0;
};

/// Step sizes for the Euclidean-style baselines.
struct BaselineOptions {
  std::function<double(std::int64_t)> step_size;
  double momentum = 0.9;

  /// eta_t = 1 / (L sqrt(t)), m = 0.9.
  static BaselineOptions defaults(double L);
};

/// Canonical-schedule runs use step_canonical, others step_general.
RunOutput run_imd(const StochasticProblem& problem, const MirrorMap& map,
                  const Schedule& schedule, const RunOptions& options);

/// DualAveragingMD: x_t = -grad W_{beta_t}(zeta_t) with the same zeta
/// recursion as IMD. ProjectedSGD: x_t = P(x_{t-1} - eta_t u_t).
/// DiscreteHeavyBall: x_t = P(x_{t-1} - eta_t u_t + m (x_{t-1} - x_{t-2})),
/// Euclidean sets only. All start from the prox center.
RunOutput run_baseline(Algorithm kind, const StochasticProblem& problem,
                       const MirrorMap& map, const Schedule& schedule,
                       const RunOptions& options,
                       const BaselineOptions& baseline);

/// Dispatches to run_imd or run_baseline.
RunOutput run_algorithm(Algorithm kind, const StochasticProblem& problem,
                        const MirrorMap& map, const Schedule& schedule,
                        const RunOptions& options,
                        const BaselineOptions& baseline);

}  // namespace imd

#endif  // IMD_BASELINES_HPP
