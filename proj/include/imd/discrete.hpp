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

#ifndef IMD_DISCRETE_HPP
#define IMD_DISCRETE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "imd/geometry.hpp"

namespace imd {

/// Step weights gamma_i (i >= 1) and regularization levels beta_i (i >= 0,
/// with beta(0) = beta0). Step t reads gamma(t + 1), so a finite schedule of
/// length n supports n - 1 steps.
class Schedule {
 public:
  using Sequence = std::function<double(std::int64_t)>;

  /// gamma_i = 1, beta_i = beta0 * sqrt(i + 1).
  static Schedule canonical(double beta0);
  static Schedule from_functions(Sequence gamma, Sequence beta, double beta0);
  /// gammas[i - 1] = gamma_i and betas[i - 1] = beta_i for i = 1..n.
  static Schedule from_values(std::vector<double> gammas,
                              std::vector<double> betas, double beta0);

  /// Throws ScheduleExhaustedError past the end of a finite schedule.
  double gamma(std::int64_t i) const;
  double beta(std::int64_t i) const;
  double beta0() const { return beta0_; }
  bool is_canonical() const { return canonical_; }

 private:
  Schedule(Sequence gamma, Sequence beta, double beta0,
           std::optional<std::int64_t> length, bool canonical);

  Sequence gamma_;
  Sequence beta_;
  double beta0_;
  std::optional<std::int64_t> length_;
  bool canonical_;
};

/// State of the discrete recursion after t steps. There is no running
/// average: `x` is the estimate.
struct IMDState {
  std::int64_t t = 0;
  double tau = 0.0;
  DualVector zeta;
  Point x;
  double beta_t = 0.0;
};

/// Weights (previous, fresh) of the convex combination
/// x_t = previous * x_{t-1} + fresh * (-grad W_{beta_t}(zeta_t)).
/// Both lie in [0, 1] and sum to exactly 1 in floating point.
struct CombinationWeights {
  double previous;
  double fresh;
};
CombinationWeights combination_weights(double tau, double gamma_next);

/// t = 0, tau = 0, zeta = 0, x = -grad W_{beta0}(0).
IMDState init(const MirrorMap& map, const Schedule& schedule);

/// General step with arbitrary (gamma, beta); u = u_t(x_{t-1}).
IMDState step_general(const IMDState& state, const DualVector& u,
                      const Schedule& schedule, const MirrorMap& map);

/// x_t = x_{t-1} - (x_{t-1} + grad W_{beta_t}(zeta_t)) / (t + 1) with
/// zeta_t = zeta_{t-1} + u and beta_t = beta0 sqrt(t + 1).
IMDState step_canonical(const IMDState& state, const DualVector& u,
                        double beta0, const MirrorMap& map);

struct BoundParams {
  double beta0 = 1.0;
  double V_at_xstar = 1.0;
  double V_bar = 1.0;
  double L = 1.0;
  double alpha = 1.0;

  /// Throws InvalidArgumentError unless all fields are positive and
  /// V_at_xstar <= V_bar.
  void validate() const;
};

/// (beta0 V(x*) + L^2 / (alpha beta0)) sqrt(t + 2) / (t + 1), for t >= 1.
double theorem1_bound(std::int64_t t, const BoundParams& p);
/// L / sqrt(alpha V_bar), the beta0 that minimizes the bound when V(x*) = V_bar.
double corollary_beta0(double L, double alpha, double V_bar);
/// 2 L sqrt(V_bar / alpha) sqrt(t + 2) / (t + 1).
double corollary_bound(std::int64_t t, double L, double alpha, double V_bar);

}  // namespace imd

#endif  // IMD_DISCRETE_HPP
