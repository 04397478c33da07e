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

#include "imd/continuous.hpp"

#include <algorithm>
#include <cmath>

#include "imd/errors.hpp"

namespace imd {

MuSchedule MuSchedule::constant(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw InvalidArgumentError("constant mu must be positive");
  }
  return MuSchedule(Kind::Constant, mu);
}

double MuSchedule::at(double t) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return mu_;
    case Kind::Linear: return t;
  }
  return 0.0;
}

double MuSchedule::rate(double) const {
  return kind_ == Kind::Linear ? 1.0 : 0.0;
}

Derivative rhs(const ContinuousSystem& system, double t,
               const DualVector& zeta, const Point& x) {
  Derivative d;
  if (system.mu.kind() == MuSchedule::Kind::Zero) {
    d.dzeta = -system.problem.grad_f(system.pair.grad_W(zeta));
    return d;
  }
  const double mu = system.mu.at(t);
  if (!(mu > 0.0)) {
    throw InvalidArgumentError("rhs: mu_t must be positive (t > 0 in linear mode)");
  }
  d.dzeta = -system.problem.grad_f(x);
  d.dx = (system.pair.grad_W(zeta) - x) / mu;
  return d;
}

double start_time(const ContinuousSystem& system, const IntegrationOptions& options) {
  return system.mu.kind() == MuSchedule::Kind::Linear ? options.t_start_offset : 0.0;
}

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

void push_sample(Trajectory& traj, const ContinuousSystem& system, double t,
                 const DualVector& zeta, const Point& x) {
  traj.times.push_back(t);
  traj.zeta_path.push_back(zeta);
  traj.x_path.push_back(x);
  traj.gap_path.push_back(system.problem.f(x) - system.problem.f_star());
  traj.lyapunov_path.push_back(system.pair.W(zeta) -
                               zeta.dot(system.problem.x_star()));
}

}  // namespace

Trajectory integrate(const ContinuousSystem& system, const IntegrationOptions& options) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) {
    throw InvalidArgumentError("integrate: dt must be positive");
  }
  const bool linear = system.mu.kind() == MuSchedule::Kind::Linear;
  const bool slaved = system.mu.kind() == MuSchedule::Kind::Zero;
  if (linear && !(options.t_start_offset > 0.0)) {
    throw InvalidArgumentError("integrate: linear mode needs t_start_offset > 0");
  }
  const double t0 = start_time(system, options);
  if (!(options.t_end >= t0)) {
    throw InvalidArgumentError("integrate: t_end precedes the start time");
  }
  const int n = system.problem.dimension();
  DualVector zeta = options.zeta0.value_or(DualVector::Zero(n));
  Point x = options.x0.value_or(system.pair.grad_W(zeta));
  if (zeta.size() != n || x.size() != n) {
    throw InvalidArgumentError("integrate: initial state has the wrong dimension");
  }
  if (slaved) x = system.pair.grad_W(zeta);

  const double span = options.t_end - t0;
  // The tolerance keeps round-off from adding a sliver step at the end.
  const auto steps = static_cast<std::int64_t>(
      std::ceil(span / options.dt - 1e-9));

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps + 1));
  push_sample(traj, system, t0, zeta, x);

  auto eval = [&](double t, const DualVector& z, const Point& p) {
    return rhs(system, t, z, p);
  };

  double t = t0;
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double t_next = (k == steps) ? options.t_end
                                       : t0 + static_cast<double>(k) * options.dt;
    const double h = t_next - t;
    const double half = 0.5 * h;
    if (slaved) {
      const Derivative k1 = eval(t, zeta, x);
      const Derivative k2 = eval(t + half, zeta + half * k1.dzeta, x);
      const Derivative k3 = eval(t + half, zeta + half * k2.dzeta, x);
      const Derivative k4 = eval(t_next, zeta + h * k3.dzeta, x);
      zeta += (h / 6.0) * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta);
      x = system.pair.grad_W(zeta);
    } else {
      const Derivative k1 = eval(t, zeta, x);
      const Derivative k2 = eval(t + half, zeta + half * k1.dzeta, x + half * k1.dx);
      const Derivative k3 = eval(t + half, zeta + half * k2.dzeta, x + half * k2.dx);
      const Derivative k4 = eval(t_next, zeta + h * k3.dzeta, x + h * k3.dx);
      zeta += (h / 6.0) * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta);
      x += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    }
    t = t_next;
    if (!finite(zeta) || !finite(x)) throw NonfiniteStateError(t);
    push_sample(traj, system, t, zeta, x);
  }
  return traj;
}

namespace {

void require_grid(const Trajectory& traj, std::size_t minimum, const char* what) {
  if (traj.size() < minimum) {
    throw InsufficientGridError(std::string(what) + ": need at least " +
                                std::to_string(minimum) + " samples");
  }
}

double central_difference(const std::vector<double>& f,
                          const std::vector<double>& t, std::size_t i) {
  return (f[i + 1] - f[i - 1]) / (t[i + 1] - t[i - 1]);
}

}  // namespace

double lyapunov_derivative_check(const Trajectory& traj, const ContinuousSystem& system) {
  require_grid(traj, 3, "lyapunov_derivative_check");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double lhs = central_difference(traj.lyapunov_path, traj.times, i);
    const double rhs_value =
        -traj.gap_path[i] -
        system.mu.at(traj.times[i]) * central_difference(traj.gap_path, traj.times, i);
    worst = std::max(worst, lhs - rhs_value);
  }
  return worst;
}

double integrated_inequality_check(const Trajectory& traj, const ContinuousSystem& system) {
  require_grid(traj, 2, "integrated_inequality_check");
  const double t0 = traj.times.front();
  const double boundary0 = system.mu.at(t0) * traj.gap_path.front();
  double gap_integral = 0.0;
  double weighted_integral = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double h = traj.times[k] - traj.times[k - 1];
    gap_integral += 0.5 * h * (traj.gap_path[k] + traj.gap_path[k - 1]);
    weighted_integral +=
        0.5 * h *
        (traj.gap_path[k] * system.mu.rate(traj.times[k]) +
         traj.gap_path[k - 1] * system.mu.rate(traj.times[k - 1]));
    const double lhs = gap_integral + traj.lyapunov_path[k] -
                       traj.lyapunov_path.front() +
                       system.mu.at(traj.times[k]) * traj.gap_path[k] - boundary0;
    worst = std::max(worst, lhs - weighted_integral);
  }
  return worst;
}

double continuous_bound_check(const Trajectory& traj, double V_at_xstar, double t_min) {
  if (!(V_at_xstar > 0.0)) {
    throw InvalidArgumentError("continuous_bound_check needs V(x*) > 0");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] < t_min) continue;
    worst = std::max(worst, traj.gap_path[i] * traj.times[i] / V_at_xstar);
  }
  return worst;
}

double heavy_ball_residual(const Trajectory& traj, double mu,
                           const DeterministicProblem& problem, double t_min,
                           double t_max) {
  require_grid(traj, 3, "heavy_ball_residual");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_min || t > t_max) continue;
    const double h_minus = t - traj.times[i - 1];
    const double h_plus = traj.times[i + 1] - t;
    const Point& xm = traj.x_path[i - 1];
    const Point& x = traj.x_path[i];
    const Point& xp = traj.x_path[i + 1];
    const Point velocity = (xp - xm) / (h_plus + h_minus);
    const Point accel =
        2.0 * ((xp - x) / h_plus - (x - xm) / h_minus) / (h_plus + h_minus);
    worst = std::max(worst, (mu * accel + velocity + problem.grad_f(x)).norm());
  }
  return worst;
}

}  // namespace imd
