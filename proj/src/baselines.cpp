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

#include "imd/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "imd/errors.hpp"

namespace imd {

namespace {

void check_compatible(const StochasticProblem& problem, const MirrorMap& map) {
  if (problem.dimension() != map.dimension()) {
    throw GeometryMismatchError("problem and mirror map dimensions differ");
  }
  if (problem.set().kind() != map.set().kind()) {
    throw GeometryMismatchError("problem and mirror map use different feasible sets");
  }
}

void check_options(const RunOptions& options) {
  if (options.horizon < 1) throw InvalidArgumentError("horizon must be >= 1");
  std::int64_t prev = 0;
  for (std::int64_t c : options.checkpoints) {
    if (c < 1 || c > options.horizon) {
      throw InvalidArgumentError("checkpoint " + std::to_string(c) +
                                 " outside [1, horizon]");
    }
    if (c <= prev) throw InvalidArgumentError("checkpoints must be strictly increasing");
    prev = c;
  }
  if (options.bound) options.bound->validate();
}

// Runs `horizon` steps of `advance(t, u)`, which must return x_t given
// u_t(x_{t-1}); records the requested checkpoints.
template <class Advance>
RunOutput drive(const StochasticProblem& problem, const MirrorMap& map,
                const RunOptions& options, Point x0, Advance advance) {
  check_compatible(problem, map);
  check_options(options);
  const auto start = std::chrono::steady_clock::now();
  SubgradientStream stream(problem, options.seed);
  RunOutput out;
  out.records.reserve(options.checkpoints.size());
  Point x = std::move(x0);
  double violation = map.set().violation(x);
  auto next_checkpoint = options.checkpoints.begin();
  for (std::int64_t t = 1; t <= options.horizon; ++t) {
    const DualVector u = stream.next_subgradient(x);
    x = advance(t, x, u);
    violation = std::max(violation, map.set().violation(x));
    if (next_checkpoint != options.checkpoints.end() && *next_checkpoint == t) {
      RunRecord r;
      r.run_id = options.run_id;
      r.seed = options.seed;
      r.t = static_cast<double>(t);
      r.gap = problem.f(x) - problem.f_star();
      r.bound = options.bound ? theorem1_bound(t, *options.bound)
                              : std::numeric_limits<double>::quiet_NaN();
      r.feasibility_violation = violation;
      r.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      out.records.push_back(std::move(r));
      ++next_checkpoint;
    }
  }
  out.final_x = std::move(x);
  out.max_violation = violation;
  return out;
}

}  // namespace

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "imd") return Algorithm::IMD;
  if (name == "dual_averaging") return Algorithm::DualAveragingMD;
  if (name == "projected_sgd") return Algorithm::ProjectedSGD;
  if (name == "heavy_ball") return Algorithm::DiscreteHeavyBall;
  throw UnknownKindError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::IMD: return "imd";
    case Algorithm::DualAveragingMD: return "dual_averaging";
    case Algorithm::ProjectedSGD: return "projected_sgd";
    case Algorithm::DiscreteHeavyBall: return "heavy_ball";
  }
  return "?";
}

BaselineOptions BaselineOptions::defaults(double L) {
  if (!(L > 0.0)) throw InvalidArgumentError("baseline defaults need L > 0");
  BaselineOptions o;
  o.step_size = [L](std::int64_t t) {
    return 1.0 / (L * std::sqrt(static_cast<double>(t)));
  };
  o.momentum = 0.9;
  return o;
}

RunOutput run_imd(const StochasticProblem& problem, const MirrorMap& map,
                  const Schedule& schedule, const RunOptions& options) {
  IMDState state = init(map, schedule);
  Point x0 = state.x;
  const bool canonical = schedule.is_canonical();
  return drive(problem, map, options, std::move(x0),
               [&](std::int64_t, const Point&, const DualVector& u) {
                 state = canonical
                             ? step_canonical(state, u, schedule.beta0(), map)
                             : step_general(state, u, schedule, map);
                 return state.x;
               });
}

RunOutput run_baseline(Algorithm kind, const StochasticProblem& problem,
                       const MirrorMap& map, const Schedule& schedule,
                       const RunOptions& options,
                       const BaselineOptions& baseline) {
  const Point x0 = map.prox().center();
  switch (kind) {
    case Algorithm::IMD:
      return run_imd(problem, map, schedule, options);

    case Algorithm::DualAveragingMD: {
      DualVector zeta = DualVector::Zero(map.dimension());
      return drive(problem, map, options, x0,
                   [&](std::int64_t t, const Point&, const DualVector& u) {
                     zeta += schedule.gamma(t) * u;
                     return map.mirror_point(schedule.beta(t), zeta);
                   });
    }

    case Algorithm::ProjectedSGD: {
      if (!baseline.step_size) throw InvalidArgumentError("projected_sgd needs a step size");
      return drive(problem, map, options, x0,
                   [&](std::int64_t t, const Point& x, const DualVector& u) {
                     return map.set().project(x - baseline.step_size(t) * u);
                   });
    }

    case Algorithm::DiscreteHeavyBall: {
      if (map.set().kind() == FeasibleSet::Kind::Simplex) {
        throw GeometryMismatchError("heavy ball is Euclidean only; simplex rejected");
      }
      if (!baseline.step_size) throw InvalidArgumentError("heavy_ball needs a step size");
      Point before = x0;
      return drive(problem, map, options, x0,
                   [&](std::int64_t t, const Point& x, const DualVector& u) {
                     Point next = map.set().project(
                         x - baseline.step_size(t) * u +
                         baseline.momentum * (x - before));
                     before = x;
                     return next;
                   });
    }
  }
  throw UnknownKindError("unknown algorithm");
}

RunOutput run_algorithm(Algorithm kind, const StochasticProblem& problem,
                        const MirrorMap& map, const Schedule& schedule,
                        const RunOptions& options,
                        const BaselineOptions& baseline) {
  return run_baseline(kind, problem, map, schedule, options, baseline);
}

}  // namespace imd
