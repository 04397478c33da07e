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

#ifndef IMD_CONTINUOUS_HPP
#define IMD_CONTINUOUS_HPP

#include <limits>
#include <optional>
#include <vector>

#include "imd/geometry.hpp"
#include "imd/oracles.hpp"

namespace imd {

/// Inertia coefficient mu_t of  mu_t x'(t) + x(t) = grad W(zeta(t)).
class MuSchedule {
 public:
  enum class Kind { Zero, Constant, Linear };

  static MuSchedule zero() { return MuSchedule(Kind::Zero, 0.0); }
  static MuSchedule constant(double mu);
  /// mu_t = t: mu_0 = 0 and mu' = 1.
  static MuSchedule linear() { return MuSchedule(Kind::Linear, 0.0); }

  Kind kind() const { return kind_; }
  double at(double t) const;
  double rate(double t) const;

 private:
  MuSchedule(Kind kind, double mu) : kind_(kind), mu_(mu) {}
  Kind kind_;
  double mu_;
};

/// zeta' = -grad f(x),  mu_t x' + x = grad W(zeta).
///
/// Uses the unconstrained convention V(x) = sup{<zeta, x> - W(zeta)}; the
/// constrained MirrorMap machinery is never involved.
struct ContinuousSystem {
  DeterministicProblem problem;
  ConjugatePair pair;
  MuSchedule mu;
};

struct Derivative {
  DualVector dzeta;
  /// Empty in Zero mode, where x = grad W(zeta) is slaved.
  Point dx;
};

/// Throws InvalidArgumentError in Linear mode for t <= 0, where the x
/// equation degenerates to an algebraic one.
Derivative rhs(const ContinuousSystem& system, double t,
               const DualVector& zeta, const Point& x);

struct IntegrationOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  /// Start time in Linear mode (other modes start at 0).
  double t_start_offset = 1e-4;
  /// Defaults: zeta = 0 and x = grad W(zeta).
  std::optional<DualVector> zeta0;
  std::optional<Point> x0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DualVector> zeta_path;
  std::vector<Point> x_path;
  /// f(x(t)) - f*.
  std::vector<double> gap_path;
  /// W(zeta(t)) - <zeta(t), x*>.
  std::vector<double> lyapunov_path;

  std::size_t size() const { return times.size(); }
};

double start_time(const ContinuousSystem& system, const IntegrationOptions& options);

/// Fixed-step classical RK4 on a grid t0, t0 + dt, ..., with a possibly
/// shorter final step landing exactly on t_end. Throws NonfiniteStateError
/// if the state stops being finite.
Trajectory integrate(const ContinuousSystem& system, const IntegrationOptions& options);

/// max over interior grid points of
///   dW*/dt - ( -(f - f*) - mu_t d/dt (f - f*) ),
/// both derivatives by central differences. Nonpositive up to
/// discretization error along exact trajectories.
double lyapunov_derivative_check(const Trajectory& traj, const ContinuousSystem& system);

/// max over t_k of
///   int (f - f*) + W*(zeta_k) - W*(zeta_0) + mu gap |_{t0}^{t_k} - int mu' (f - f*)
/// with trapezoid quadrature; nonpositive up to discretization error.
double integrated_inequality_check(const Trajectory& traj, const ContinuousSystem& system);

/// max over grid points with t >= t_min of t (f(x(t)) - f*) / V(x*).
double continuous_bound_check(const Trajectory& traj, double V_at_xstar, double t_min);

/// max |mu x'' + x' + grad f(x)|_2 over interior grid points in
/// [t_min, t_max], derivatives by finite differences on x_path.
double heavy_ball_residual(const Trajectory& traj, double mu,
                           const DeterministicProblem& problem,
                           double t_min = -std::numeric_limits<double>::infinity(),
                           double t_max = std::numeric_limits<double>::infinity());

}  // namespace imd

#endif  // IMD_CONTINUOUS_HPP
