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

#include "imd/discrete.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "imd/errors.hpp"

namespace imd {

Schedule::Schedule(Sequence gamma, Sequence beta, double beta0,
                   std::optional<std::int64_t> length, bool canonical)
    : gamma_(std::move(gamma)),
      beta_(std::move(beta)),
      beta0_(beta0),
      length_(length),
      canonical_(canonical) {
  if (!(beta0 > 0.0) || !std::isfinite(beta0)) throw NonpositiveBetaError(beta0);
}

Schedule Schedule::canonical(double beta0) {
  return Schedule([](std::int64_t) { return 1.0; },
                  [beta0](std::int64_t i) {
                    return beta0 * std::sqrt(static_cast<double>(i + 1));
                  },
                  beta0, std::nullopt, true);
}

Schedule Schedule::from_functions(Sequence gamma, Sequence beta, double beta0) {
  return Schedule(std::move(gamma), std::move(beta), beta0, std::nullopt, false);
}

Schedule Schedule::from_values(std::vector<double> gammas,
                               std::vector<double> betas, double beta0) {
  if (gammas.size() != betas.size()) {
    throw InvalidArgumentError("schedule: gamma and beta lengths differ");
  }
  const auto n = static_cast<std::int64_t>(gammas.size());
  return Schedule(
      [g = std::move(gammas)](std::int64_t i) { return g[i - 1]; },
      [b = std::move(betas)](std::int64_t i) { return b[i - 1]; }, beta0, n,
      false);
}

double Schedule::gamma(std::int64_t i) const {
  if (i < 1) throw InvalidArgumentError("gamma index must be >= 1");
  if (length_ && i > *length_) {
    throw ScheduleExhaustedError("schedule has no gamma_" + std::to_string(i));
  }
  const double g = gamma_(i);
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw InvalidArgumentError("gamma_" + std::to_string(i) + " must be positive");
  }
  return g;
}

double Schedule::beta(std::int64_t i) const {
  if (i < 0) throw InvalidArgumentError("beta index must be >= 0");
  if (i == 0) return beta0_;
  if (length_ && i > *length_) {
    throw ScheduleExhaustedError("schedule has no beta_" + std::to_string(i));
  }
  const double b = beta_(i);
  if (!(b > 0.0) || !std::isfinite(b)) throw NonpositiveBetaError(b);
  return b;
}

CombinationWeights combination_weights(double tau, double gamma_next) {
  const double denom = tau + gamma_next;
  // The larger weight is formed by division and the smaller as its exact
  // complement (Sterbenz), so previous + fresh == 1 holds bitwise.
  if (tau >= gamma_next) {
    const double previous = tau / denom;
    return {previous, 1.0 - previous};
  }
  const double fresh = gamma_next / denom;
  return {1.0 - fresh, fresh};
}

IMDState init(const MirrorMap& map, const Schedule& schedule) {
  IMDState s;
  s.t = 0;
  s.tau = 0.0;
  s.zeta = DualVector::Zero(map.dimension());
  s.beta_t = schedule.beta0();
  s.x = map.mirror_point(s.beta_t, s.zeta);
  return s;
}

IMDState step_general(const IMDState& state, const DualVector& u,
                      const Schedule& schedule, const MirrorMap& map) {
  IMDState next;
  next.t = state.t + 1;
  const double gamma_t = schedule.gamma(next.t);
  const double gamma_next = schedule.gamma(next.t + 1);
  next.tau = state.tau + gamma_t;
  next.zeta = state.zeta + gamma_t * u;
  next.beta_t = schedule.beta(next.t);
  const Point fresh_point = map.mirror_point(next.beta_t, next.zeta);
  const CombinationWeights w = combination_weights(next.tau, gamma_next);
  next.x = w.previous * state.x + w.fresh * fresh_point;
  return next;
}

IMDState step_canonical(const IMDState& state, const DualVector& u,
                        double beta0, const MirrorMap& map) {
  IMDState next;
  next.t = state.t + 1;
  const double t = static_cast<double>(next.t);
  next.tau = t;
  next.zeta = state.zeta + u;
  next.beta_t = beta0 * std::sqrt(t + 1.0);
  next.x = state.x - (state.x + map.grad_W(next.beta_t, next.zeta)) / (t + 1.0);
  return next;
}

void BoundParams::validate() const {
  if (!(beta0 > 0.0) || !(V_bar > 0.0) || !(L > 0.0) || !(alpha > 0.0)) {
    throw InvalidArgumentError("bound parameters beta0, V_bar, L, alpha must be positive");
  }
  if (!(V_at_xstar >= 0.0) || V_at_xstar > V_bar) {
    throw InvalidArgumentError("bound parameters need 0 <= V(x*) <= V_bar");
  }
}

double theorem1_bound(std::int64_t t, const BoundParams& p) {
  if (t < 1) throw InvalidArgumentError("theorem1_bound needs t >= 1");
  p.validate();
  const double td = static_cast<double>(t);
  const double constant = p.beta0 * p.V_at_xstar + p.L * p.L / (p.alpha * p.beta0);
  return constant * std::sqrt(td + 2.0) / (td + 1.0);
}

double corollary_beta0(double L, double alpha, double V_bar) {
  if (!(L > 0.0) || !(alpha > 0.0) || !(V_bar > 0.0)) {
    throw InvalidArgumentError("corollary_beta0 needs positive L, alpha, V_bar");
  }
  return L / std::sqrt(alpha * V_bar);
}

double corollary_bound(std::int64_t t, double L, double alpha, double V_bar) {
  if (t < 1) throw InvalidArgumentError("corollary_bound needs t >= 1");
  if (!(L > 0.0) || !(alpha > 0.0) || !(V_bar > 0.0)) {
    throw InvalidArgumentError("corollary_bound needs positive L, alpha, V_bar");
  }
  const double td = static_cast<double>(t);
  return 2.0 * L * std::sqrt(V_bar / alpha) * std::sqrt(td + 2.0) / (td + 1.0);
}

}  // namespace imd
