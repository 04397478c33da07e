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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "imd/continuous.hpp"
#include "imd/discrete.hpp"
#include "imd/harness/checks.hpp"
#include "imd/harness/config.hpp"
#include "imd/harness/experiment.hpp"
#include "imd/harness/report.hpp"

using namespace imd;
using namespace imd::harness;

namespace {

constexpr std::uint64_t kSeed = 20261014;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Eigen::VectorXd diag5() {
  Eigen::VectorXd d(5);
  d << 0.1, 0.3, 0.5, 1.0, 2.0;
  return d;
}

// Quadratic in R^5 with |x*| = 1.
DeterministicProblem unit_quadratic() {
  return DeterministicProblem::quadratic(diag5().asDiagonal().toDenseMatrix(),
                                         Point::Constant(5, 1.0 / std::sqrt(5.0)));
}

const ConjugatePair kIdentity(ConjugatePair::Kind::Identity);

ContinuousSystem linear_system() { return {unit_quadratic(), kIdentity, MuSchedule::linear()}; }

const Trajectory& criterion1_trajectory() {
  static const Trajectory traj = [] {
    IntegrationOptions opt;
    opt.t_end = 100.0;
    opt.dt = 1e-3;
    return integrate(linear_system(), opt);
  }();
  return traj;
}

Outcome continuous_bound() {
  const Trajectory& traj = criterion1_trajectory();
  const double V = 0.5 * unit_quadratic().x_star().squaredNorm();
  const double worst = continuous_bound_check(traj, V, 1.0);
  return {worst <= 1.0 + 1e-3, fmt("max gap*t/V(x*) = %.6f, limit %.4f", worst, 1.0 + 1e-3)};
}

Outcome heavy_ball() {
  const auto problem = unit_quadratic();
  const ContinuousSystem system{problem, kIdentity, MuSchedule::constant(1.0)};
  IntegrationOptions opt;
  opt.t_end = 20.0;
  opt.dt = 1e-3;
  const double r = heavy_ball_residual(integrate(system, opt), 1.0, problem, 0.1, 20.0);
  return {r <= 1e-3, fmt("max residual = %.3e, limit %.0e", r, 1e-3)};
}

Outcome gradient_flow() {
  const auto problem = unit_quadratic();
  const ContinuousSystem system{problem, kIdentity, MuSchedule::zero()};
  IntegrationOptions opt;
  opt.t_end = 10.0;
  opt.dt = 1e-3;
  const Trajectory traj = integrate(system, opt);
  const Point xs = problem.x_star();
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Eigen::ArrayXd decay = (-diag5() * traj.times[i]).array().exp();
    const Point exact = xs - (decay * xs.array()).matrix();
    worst = std::max(worst, (traj.x_path[i] - exact).lpNorm<Eigen::Infinity>());
  }
  return {worst <= 1e-6, fmt("max |x - x_exact| = %.3e, limit %.0e", worst, 1e-6)};
}

Outcome lyapunov() {
  const double v = lyapunov_derivative_check(criterion1_trajectory(), linear_system());
  return {v <= 1e-4, fmt("max violation = %.3e, limit %.0e", v, 1e-4)};
}

Outcome mirror_maps() {
  double worst_fd = 0.0;
  for (const auto& [name, map] : reference_geometries()) {
    worst_fd = std::max(worst_fd, gradient_consistency(map, 1000, kSeed, 1e-6));
  }
  const double grid = simplex2_grid_error(1000, kSeed);
  char buf[160];
  std::snprintf(buf, sizeof buf, "max FD rel err = %.3e (limit 1e-5), grid oracle err = %.3e (limit 1e-6)",
                worst_fd, grid);
  return {worst_fd <= 1e-5 && grid <= 1e-6, buf};
}

Outcome lipschitz() {
  double worst = 0.0;
  for (const auto& [name, map] : reference_geometries()) {
    for (double beta : {0.25, 1.0, 4.0}) {
      const double ratio = lipschitz_probe(map, beta, 10000, kSeed);
      worst = std::max(worst, ratio * map.prox().alpha() * beta);
    }
  }
  return {worst <= 1.0 + 1e-9, fmt("max ratio*alpha*beta = %.12f, limit %.9f", worst, 1.0 + 1e-9)};
}

const char* kLinearLoss = R"(
experiment_id = acceptance_linear_loss
problem = linear_loss
dimension = 10
prox = entropic
set = simplex
linear_halfwidth = 0.5
beta0 = corollary
horizon = 5000
checkpoints = 10, 100, 1000, 5000
replications = 200
base_seed = 1
)";

const char* kQuadraticNoise = R"(
experiment_id = acceptance_quadratic_noise
problem = quadratic_noise
dimension = 5
prox = euclidean
set = box
box_lower = -1
box_upper = 1
x_star = 0.6, -0.3, 0.9, 0.0, -0.8
noise_halfwidth = 0.5
beta0 = corollary
horizon = 5000
checkpoints = 10, 100, 1000, 5000
replications = 200
base_seed = 1
)";

struct MonteCarlo {
  ExperimentConfig config;
  ExperimentResult result;
  DiscreteSetup setup;
};

std::vector<MonteCarlo>& criterion7_runs() {
  static std::vector<MonteCarlo> runs = [] {
    std::vector<MonteCarlo> out;
    for (const char* text : {kLinearLoss, kQuadraticNoise}) {
      ExperimentConfig c = parse_config(text);
      out.push_back({c, run_experiment(c, threads()), build_discrete(c)});
    }
    return out;
  }();
  return runs;
}

Outcome theorem1() {
  std::ostringstream detail;
  bool ok = true;
  for (const MonteCarlo& mc : criterion7_runs()) {
    const BoundParams& b = mc.setup.bound;
    double worst = 0.0;
    for (const CheckpointSummary& s : mc.result.summary) {
      const double bound = corollary_bound(static_cast<std::int64_t>(s.t), b.L, b.alpha, b.V_bar);
      ok = ok && s.mean_gap <= bound;
      worst = std::max(worst, s.mean_gap / bound);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s max mean_gap/bound = %.4f; ", mc.config.problem.c_str(), worst);
    detail << buf;
  }
  return {ok, detail.str() + "limit 1"};
}

Outcome feasibility() {
  double worst = 0.0;
  for (const MonteCarlo& mc : criterion7_runs()) {
    for (const RunRecord& r : mc.result.runs) worst = std::max(worst, r.feasibility_violation);
  }
  return {worst <= kFeasibilityTol, fmt("max violation = %.3e, limit %.0e", worst, kFeasibilityTol)};
}

Outcome equivalence() {
  CounterRng rng(kSeed);
  double worst = 0.0;
  for (const auto& [name, map] : reference_geometries()) {
    const double beta0 = 0.8;
    const Schedule schedule = Schedule::canonical(beta0);
    IMDState state = init(map, schedule);
    for (int t = 0; t < 1000; ++t) {
      DualVector u(map.dimension());
      for (int i = 0; i < u.size(); ++i) u[i] = rng.normal();
      const IMDState general = step_general(state, u, schedule, map);
      const IMDState canonical = step_canonical(state, u, beta0, map);
      worst = std::max(worst, (general.x - canonical.x).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, (general.zeta - canonical.zeta).lpNorm<Eigen::Infinity>());
      state = canonical;
    }
  }
  return {worst <= 1e-14, fmt("max |general - canonical| = %.3e, limit %.0e", worst, 1e-14)};
}

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

Outcome determinism() {
  bool ok = true;
  const int many = std::max(threads(), 4);
  for (const MonteCarlo& mc : criterion7_runs()) {
    const std::string reference = strip_wall_time(to_csv(mc.result));
    ok = ok && reference == strip_wall_time(to_csv(run_experiment(mc.config, 1)));
    ok = ok && reference == strip_wall_time(to_csv(run_experiment(mc.config, many)));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "CSV identical at 1, %d and %d threads", threads(), many);
  return {ok, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1  continuous bound gap*t <= V(x*)", continuous_bound},
      {"C2  heavy-ball recovery", heavy_ball},
      {"C3  gradient-flow recovery", gradient_flow},
      {"C4  Lyapunov inequality", lyapunov},
      {"C5  mirror-map correctness", mirror_maps},
      {"C6  Lipschitz sampling", lipschitz},
      {"C7  Monte-Carlo last-iterate bound", theorem1},
      {"C8  feasibility of every iterate", feasibility},
      {"C9  canonical/general equivalence", equivalence},
      {"C10 determinism across concurrency", determinism},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-38s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
