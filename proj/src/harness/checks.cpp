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

#include "imd/harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "imd/baselines.hpp"
#include "imd/errors.hpp"

namespace imd::harness {

std::pair<double, DualVector> random_beta_zeta(int dimension, CounterRng& rng) {
  const double beta = std::exp(rng.uniform(-1.5, 1.5));
  const double scale = beta * std::exp(rng.uniform(-2.0, 2.0));
  DualVector zeta(dimension);
  for (int i = 0; i < dimension; ++i) zeta[i] = scale * rng.normal();
  return {beta, zeta};
}

double gradient_consistency(const MirrorMap& map, int samples, std::uint64_t seed,
                            double h) {
  CounterRng rng(seed);
  const int n = map.dimension();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto [beta, zeta] = random_beta_zeta(n, rng);
    const Point g = map.grad_W(beta, zeta);
    const double scale = std::max(g.lpNorm<Eigen::Infinity>(), 1.0);
    for (int i = 0; i < n; ++i) {
      DualVector plus = zeta, minus = zeta;
      plus[i] += h;
      minus[i] -= h;
      const double fd =
          (map.fenchel_value(beta, plus) - map.fenchel_value(beta, minus)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g[i]) / scale);
    }
  }
  return worst;
}

namespace {

// -zeta^T x - beta V(x) along x = (s, 1 - s).
double simplex2_objective(double s, double beta, const DualVector& zeta) {
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  const double v = std::log(2.0) + xlogx(s) + xlogx(1.0 - s);
  return -zeta[0] * s - zeta[1] * (1.0 - s) - beta * v;
}

}  // namespace

double simplex2_grid_error(int samples, std::uint64_t seed) {
  const MirrorMap map(ProxFunction::entropic(2), FeasibleSet::simplex(2));
  CounterRng rng(seed);
  double worst = 0.0;
  constexpr int kPoints = 2001;
  for (int s = 0; s < samples; ++s) {
    const auto [beta, zeta] = random_beta_zeta(2, rng);
    double lo = 0.0, hi = 1.0;
    double best_s = 0.0, best_v = -INFINITY;
    for (int level = 0; level < 12; ++level) {
      const double step = (hi - lo) / (kPoints - 1);
      for (int k = 0; k < kPoints; ++k) {
        const double sk = lo + step * k;
        const double v = simplex2_objective(sk, beta, zeta);
        if (v > best_v) {
          best_v = v;
          best_s = sk;
        }
      }
      lo = std::max(0.0, best_s - 2.0 * step);
      hi = std::min(1.0, best_s + 2.0 * step);
    }
    const double value_err = std::abs(best_v - map.fenchel_value(beta, zeta));
    const double point_err = std::abs(best_s - map.mirror_point(beta, zeta)[0]);
    worst = std::max({worst, value_err, point_err});
  }
  return worst;
}

double argmax_violation(const MirrorMap& map, int samples, std::uint64_t seed) {
  CounterRng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto [beta, zeta] = random_beta_zeta(map.dimension(), rng);
    worst = std::max(worst, map.set().violation(map.mirror_point(beta, zeta)));
  }
  return worst;
}

std::vector<std::pair<std::string, MirrorMap>> reference_geometries() {
  std::vector<std::pair<std::string, MirrorMap>> out;
  out.emplace_back("entropic_simplex_n5",
                   MirrorMap(ProxFunction::entropic(5), FeasibleSet::simplex(5)));
  FeasibleSet box = FeasibleSet::box(4, -1.0, 2.0);
  out.emplace_back("euclidean_box_n4", MirrorMap(ProxFunction::euclidean(box.center()), box));
  Point c(3);
  c << 0.2, -0.1, 0.4;
  FeasibleSet ball = FeasibleSet::ball(c, 1.5);
  out.emplace_back("euclidean_ball_n3", MirrorMap(ProxFunction::euclidean(c), ball));
  return out;
}

namespace {

CheckLine at_most(std::string name, double value, double threshold) {
  return CheckLine{std::move(name), value, threshold, value <= threshold};
}

void gradient_suite(std::vector<CheckLine>& out, std::uint64_t seed) {
  for (const auto& [name, map] : reference_geometries()) {
    out.push_back(at_most("gradient_fd/" + name, gradient_consistency(map, 1000, seed), 1e-5));
  }
  out.push_back(at_most("grid_oracle/entropic_simplex_n2", simplex2_grid_error(50, seed), 1e-6));
}

void lipschitz_suite(std::vector<CheckLine>& out, std::uint64_t seed) {
  for (const auto& [name, map] : reference_geometries()) {
    for (double beta : {0.25, 1.0, 4.0}) {
      const double ratio = lipschitz_probe(map, beta, 10000, seed);
      char label[96];
      std::snprintf(label, sizeof label, "lipschitz/%s/beta=%g", name.c_str(), beta);
      // Report ratio * alpha * beta against 1.
      out.push_back(at_most(label, ratio * map.prox().alpha() * beta, 1.0 + 1e-9));
    }
  }
}

void feasibility_suite(std::vector<CheckLine>& out, std::uint64_t seed) {
  for (const auto& [name, map] : reference_geometries()) {
    out.push_back(at_most("argmax_feasible/" + name, argmax_violation(map, 10000, seed),
                          kFeasibilityTol));
  }
  RunOptions options;
  options.horizon = 2000;
  options.checkpoints = {2000};
  options.seed = seed;

  const auto geometries = reference_geometries();
  {
    const MirrorMap& map = geometries[0].second;
    DualVector mean(5);
    mean << 0.3, -0.2, 0.1, 0.5, -0.4;
    const auto problem = StochasticProblem::linear_loss(mean, 0.5);
    const Schedule schedule = Schedule::canonical(1.0);
    const auto baseline = BaselineOptions::defaults(problem.L_bound());
    for (Algorithm a : {Algorithm::IMD, Algorithm::DualAveragingMD, Algorithm::ProjectedSGD}) {
      const auto run = run_algorithm(a, problem, map, schedule, options, baseline);
      out.push_back(at_most("iterates_feasible/" + std::string(to_string(a)) + "/simplex",
                            run.max_violation, kFeasibilityTol));
    }
  }
  for (std::size_t g = 1; g < geometries.size(); ++g) {
    const auto& [name, map] = geometries[g];
    const Point x_star = map.set().project(map.set().upper());
    const auto problem = StochasticProblem::quadratic_noise(map.set(), x_star, 0.5);
    const Schedule schedule = Schedule::canonical(1.0);
    const auto baseline = BaselineOptions::defaults(problem.L_bound());
    for (Algorithm a : {Algorithm::IMD, Algorithm::DualAveragingMD, Algorithm::ProjectedSGD,
                        Algorithm::DiscreteHeavyBall}) {
      const auto run = run_algorithm(a, problem, map, schedule, options, baseline);
      out.push_back(at_most("iterates_feasible/" + std::string(to_string(a)) + "/" + name,
                            run.max_violation, kFeasibilityTol));
    }
  }
}

}  // namespace

std::vector<CheckLine> run_check_suite(std::string_view suite, std::uint64_t seed) {
  const bool all = suite == "all";
  if (!all && suite != "gradients" && suite != "lipschitz" && suite != "feasibility") {
    throw InvalidArgumentError("unknown check suite '" + std::string(suite) + "'");
  }
  std::vector<CheckLine> out;
  if (all || suite == "gradients") gradient_suite(out, seed);
  if (all || suite == "lipschitz") lipschitz_suite(out, seed);
  if (all || suite == "feasibility") feasibility_suite(out, seed);
  return out;
}

int print_checks(std::ostream& out, const std::vector<CheckLine>& lines) {
  bool all_pass = true;
  char buf[256];
  for (const CheckLine& c : lines) {
    std::snprintf(buf, sizeof buf, "%s %-48s value=%.3e threshold=%.3e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold);
    out << buf;
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace imd::harness
