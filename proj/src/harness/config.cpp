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

#include "imd/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace imd::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, int line, std::string_view key) {
  const std::string s(trim(v));
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(out)) {
    throw ConfigError(line, "key '" + std::string(key) + "' expects a number, got '" +
                                s + "'");
  }
  return out;
}

template <class Int>
Int to_integer(std::string_view v, int line, std::string_view key) {
  const std::string_view s = trim(v);
  Int out{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(line, "key '" + std::string(key) +
                                "' expects an integer, got '" + std::string(s) + "'");
  }
  return out;
}

std::vector<double> to_list(std::string_view v, int line, std::string_view key) {
  std::string_view s = trim(v);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = trim(s.substr(1, s.size() - 2));
  }
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(to_double(s.substr(start, comma - start), line, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string one_of(std::string_view v, std::initializer_list<std::string_view> allowed,
                   int line, std::string_view key) {
  const std::string_view s = trim(v);
  for (auto a : allowed) {
    if (s == a) return std::string(s);
  }
  std::string msg = "key '" + std::string(key) + "' must be one of";
  for (auto a : allowed) msg += " " + std::string(a);
  throw ConfigError(line, msg + ", got '" + std::string(s) + "'");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"experiment_id",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.experiment_id = std::string(trim(v));
         if (c.experiment_id.empty()) throw ConfigError(line, "experiment_id is empty");
       }},
      {"mode",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.mode = one_of(v, {"discrete", "continuous"}, line, "mode") == "discrete"
                      ? Mode::Discrete
                      : Mode::Continuous;
       }},
      {"algorithm",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.algorithm = algorithm_from_string(one_of(
             v, {"imd", "dual_averaging", "projected_sgd", "heavy_ball"}, line,
             "algorithm"));
       }},
      {"problem",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.problem = one_of(v, {"linear_loss", "quadratic_noise", "quadratic"}, line,
                            "problem");
       }},
      {"dimension",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.dimension = to_integer<int>(v, line, "dimension");
         if (c.dimension < 1) throw ConfigError(line, "dimension must be >= 1");
       }},
      {"prox",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.prox = one_of(v, {"entropic", "euclidean"}, line, "prox");
       }},
      {"set",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.set = one_of(v, {"simplex", "box", "ball"}, line, "set");
       }},
      {"box_lower",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.box_lower = to_double(v, line, "box_lower");
       }},
      {"box_upper",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.box_upper = to_double(v, line, "box_upper");
       }},
      {"ball_radius",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.ball_radius = to_double(v, line, "ball_radius");
       }},
      {"linear_means",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.linear_means = to_list(v, line, "linear_means");
       }},
      {"linear_halfwidth",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.linear_halfwidth = to_double(v, line, "linear_halfwidth");
       }},
      {"x_star",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.x_star = to_list(v, line, "x_star");
       }},
      {"noise_halfwidth",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.noise_halfwidth = to_double(v, line, "noise_halfwidth");
       }},
      {"beta0",
       [](ExperimentConfig& c, std::string_view v, int line) {
         if (trim(v) == "corollary") {
           c.beta0.reset();
         } else {
           c.beta0 = to_double(v, line, "beta0");
         }
       }},
      {"step_size",
       [](ExperimentConfig& c, std::string_view v, int line) {
         if (trim(v) == "default") {
           c.step_size.reset();
         } else {
           c.step_size = to_double(v, line, "step_size");
         }
       }},
      {"momentum",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.momentum = to_double(v, line, "momentum");
       }},
      {"conjugate",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.conjugate = one_of(v, {"identity", "cosh_sum"}, line, "conjugate");
       }},
      {"mu_mode",
       [](ExperimentConfig& c, std::string_view v, int line) {
         const std::string m = one_of(v, {"zero", "constant", "linear"}, line, "mu_mode");
         c.mu_mode = m == "zero"       ? MuSchedule::Kind::Zero
                     : m == "constant" ? MuSchedule::Kind::Constant
                                       : MuSchedule::Kind::Linear;
       }},
      {"mu",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.mu = to_double(v, line, "mu");
       }},
      {"hessian_diag",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.hessian_diag = to_list(v, line, "hessian_diag");
       }},
      {"dt",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.dt = to_double(v, line, "dt");
       }},
      {"t_start_offset",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.t_start_offset = to_double(v, line, "t_start_offset");
       }},
      {"horizon",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.horizon = to_double(v, line, "horizon");
       }},
      {"checkpoints",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.checkpoints = to_list(v, line, "checkpoints");
         if (c.checkpoints.empty()) throw ConfigError(line, "checkpoints is empty");
       }},
      {"replications",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.replications = to_integer<int>(v, line, "replications");
       }},
      {"base_seed",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.base_seed = to_integer<std::uint64_t>(v, line, "base_seed");
       }},
      {"output_path",
       [](ExperimentConfig& c, std::string_view v, int) {
         c.output_path = std::string(trim(v));
       }},
      {"threads",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.threads = to_integer<int>(v, line, "threads");
       }},
  };
  return table;
}

[[noreturn]] void invalid(const std::string& message) { throw ConfigError(0, message); }

bool is_integral(double v) { return std::floor(v) == v; }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? 0.5 * (a + b) : a + (b - a) * i / (n - 1);
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

FeasibleSet make_set(const ExperimentConfig& c) {
  if (c.set == "simplex") return FeasibleSet::simplex(c.dimension);
  if (c.set == "box") return FeasibleSet::box(c.dimension, c.box_lower, c.box_upper);
  return FeasibleSet::ball(Point::Zero(c.dimension), c.ball_radius);
}

}  // namespace

void finalize_config(ExperimentConfig& c) {
  // Dimension: explicit, else implied by a vector-valued key, else 10.
  std::size_t implied = 0;
  for (const auto* v : {&c.linear_means, &c.x_star, &c.hessian_diag}) {
    if (v->empty()) continue;
    if (implied != 0 && v->size() != implied) invalid("vector-valued keys disagree in length");
    implied = v->size();
  }
  if (c.dimension == 0) c.dimension = implied != 0 ? static_cast<int>(implied) : 10;
  if (implied != 0 && implied != static_cast<std::size_t>(c.dimension)) {
    invalid("vector-valued keys must have length dimension = " + std::to_string(c.dimension));
  }
  const int n = c.dimension;

  if (c.problem.empty()) invalid("missing required key 'problem'");
  if (!(c.horizon > 0.0)) invalid("missing or nonpositive 'horizon'");
  if (c.replications < 1) invalid("replications must be >= 1");
  if (c.threads < 1) invalid("threads must be >= 1");

  if (c.mode == Mode::Discrete) {
    if (c.problem == "quadratic") invalid("problem 'quadratic' is continuous-mode only");
    if (!is_integral(c.horizon)) invalid("discrete horizon must be an integer step count");
    if (c.prox.empty()) invalid("missing required key 'prox'");
    if (c.set.empty()) invalid("missing required key 'set'");
    if ((c.prox == "entropic") != (c.set == "simplex")) {
      invalid(c.prox == "entropic" ? "entropic prox requires set = simplex, got " + c.set
                                   : "euclidean prox requires set = box or ball, got simplex");
    }
    if (c.problem == "linear_loss" && c.set != "simplex") {
      invalid("linear_loss runs on the simplex");
    }
    if (c.problem == "quadratic_noise" && c.set == "simplex") {
      invalid("quadratic_noise runs on a box or ball");
    }
    if (c.set == "simplex" && n < 2) invalid("simplex needs dimension >= 2");
    if (c.set == "box" && !(c.box_lower < c.box_upper)) invalid("box_lower must be < box_upper");
    if (c.set == "ball" && !(c.ball_radius > 0.0)) invalid("ball_radius must be positive");
    if (c.algorithm == Algorithm::DiscreteHeavyBall && c.set == "simplex") {
      invalid("heavy_ball is Euclidean only; simplex rejected");
    }
    if (c.beta0 && !(*c.beta0 > 0.0)) invalid("beta0 must be positive");
    if (c.step_size && !(*c.step_size >= 0.0)) invalid("step_size must be >= 0");
    if (c.linear_halfwidth < 0.0 || c.noise_halfwidth < 0.0) invalid("halfwidths must be >= 0");
    if (c.problem == "linear_loss" && c.linear_means.empty()) {
      c.linear_means = linspace(-0.5, 0.5, n);
    }
    if (c.problem == "quadratic_noise") {
      if (c.x_star.empty()) {
        c.x_star.assign(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
          c.x_star[static_cast<std::size_t>(i)] =
              c.set == "box" ? c.box_lower + 0.65 * (c.box_upper - c.box_lower)
                             : 0.5 * c.ball_radius / std::sqrt(static_cast<double>(n));
        }
      }
      if (!make_set(c).contains(to_vector(c.x_star))) invalid("x_star must lie in the set");
    }
  } else {
    if (c.problem != "quadratic") invalid("continuous mode requires problem = quadratic");
    if (!c.prox.empty() || !c.set.empty()) {
      invalid("continuous mode is unconstrained; remove 'prox'/'set'");
    }
    if (!(c.dt > 0.0)) invalid("dt must be positive");
    if (!(c.t_start_offset > 0.0)) invalid("t_start_offset must be positive");
    if (c.mu_mode == MuSchedule::Kind::Constant && !(c.mu > 0.0)) {
      invalid("constant mu_mode needs mu > 0");
    }
    if (c.hessian_diag.empty()) c.hessian_diag = linspace(0.1, 1.0, n);
    if (std::any_of(c.hessian_diag.begin(), c.hessian_diag.end(),
                    [](double a) { return a < 0.0; })) {
      invalid("hessian_diag entries must be >= 0");
    }
    if (c.x_star.empty()) {
      c.x_star.assign(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    }
  }

  if (c.checkpoints.empty()) c.checkpoints = {c.horizon};
  std::sort(c.checkpoints.begin(), c.checkpoints.end());
  c.checkpoints.erase(std::unique(c.checkpoints.begin(), c.checkpoints.end()),
                      c.checkpoints.end());
  for (double t : c.checkpoints) {
    if (t < 1.0 || t > c.horizon) {
      std::ostringstream msg;
      msg << "checkpoint " << t << " outside [1, horizon = " << c.horizon << "]";
      invalid(msg.str());
    }
    if (c.mode == Mode::Discrete && !is_integral(t)) {
      invalid("discrete checkpoints must be integer steps");
    }
  }
  if (c.output_path.empty()) c.output_path = c.experiment_id + ".csv";
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->second(config, value, line_no);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(line_no, e.what());
    }
  }
  finalize_config(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

DiscreteSetup build_discrete(const ExperimentConfig& c) {
  if (c.mode != Mode::Discrete) invalid("build_discrete on a continuous config");
  FeasibleSet set = make_set(c);
  ProxFunction prox = c.prox == "entropic" ? ProxFunction::entropic(c.dimension)
                                           : ProxFunction::euclidean(set.center());
  MirrorMap map(std::move(prox), set);
  StochasticProblem problem =
      c.problem == "linear_loss"
          ? StochasticProblem::linear_loss(to_vector(c.linear_means), c.linear_halfwidth)
          : StochasticProblem::quadratic_noise(set, to_vector(c.x_star), c.noise_halfwidth);
  if (!(problem.L_bound() > 0.0)) invalid("the problem has L = 0; add noise or a nonzero mean");

  BoundParams bound;
  bound.alpha = map.prox().alpha();
  bound.L = problem.L_bound();
  bound.V_bar = map.max_prox_value();
  bound.V_at_xstar = map.prox_value(problem.x_star());
  bound.beta0 = c.beta0 ? *c.beta0 : corollary_beta0(bound.L, bound.alpha, bound.V_bar);
  bound.validate();

  BaselineOptions baseline = BaselineOptions::defaults(bound.L);
  if (c.step_size) {
    const double eta = *c.step_size;
    baseline.step_size = [eta](std::int64_t) { return eta; };
  }
  baseline.momentum = c.momentum;

  std::vector<std::int64_t> checkpoints;
  for (double t : c.checkpoints) checkpoints.push_back(static_cast<std::int64_t>(t));

  return DiscreteSetup{std::move(problem),
                       std::move(map),
                       Schedule::canonical(bound.beta0),
                       bound,
                       std::move(baseline),
                       std::move(checkpoints),
                       static_cast<std::int64_t>(c.horizon)};
}

ContinuousSetup build_continuous(const ExperimentConfig& c) {
  if (c.mode != Mode::Continuous) invalid("build_continuous on a discrete config");
  const Eigen::MatrixXd A = to_vector(c.hessian_diag).asDiagonal();
  const Point x_star = to_vector(c.x_star);
  MuSchedule mu = c.mu_mode == MuSchedule::Kind::Zero       ? MuSchedule::zero()
                  : c.mu_mode == MuSchedule::Kind::Constant ? MuSchedule::constant(c.mu)
                                                            : MuSchedule::linear();
  ContinuousSystem system{DeterministicProblem::quadratic(A, x_star),
                          continuous_conjugates(c.conjugate), mu};
  IntegrationOptions options;
  options.t_end = c.horizon;
  options.dt = c.dt;
  options.t_start_offset = c.t_start_offset;
  const double V = system.pair.V(x_star);
  return ContinuousSetup{std::move(system), options, V};
}

}  // namespace imd::harness
