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

#ifndef IMD_HARNESS_CONFIG_HPP
#define IMD_HARNESS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imd/baselines.hpp"
#include "imd/continuous.hpp"
#include "imd/errors.hpp"

namespace imd::harness {

/// Malformed or invalid experiment configuration. `line()` is 0 when the
/// problem is not tied to a single line (e.g. a missing key).
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Mode { Discrete, Continuous };

/// A flat `key = value` experiment description. See README.md for the key
/// reference; every field below corresponds to one key.
struct ExperimentConfig {
  std::string experiment_id = "experiment";
  Mode mode = Mode::Discrete;

  // Discrete mode.
  Algorithm algorithm = Algorithm::IMD;
  std::string problem;  // linear_loss | quadratic_noise | quadratic
  /// 0 until finalized: then the length of any given vector, else 10.
  int dimension = 0;
  std::string prox;     // entropic | euclidean
  std::string set;      // simplex | box | ball
  double box_lower = -1.0;
  double box_upper = 1.0;
  double ball_radius = 1.0;
  std::vector<double> linear_means;
  double linear_halfwidth = 0.5;
  std::vector<double> x_star;
  double noise_halfwidth = 0.5;
  /// Empty means "corollary": beta0 = L / sqrt(alpha V_bar).
  std::optional<double> beta0;
  /// Empty means eta_t = 1 / (L sqrt(t)).
  std::optional<double> step_size;
  double momentum = 0.9;

  // Continuous mode.
  std::string conjugate = "identity";
  MuSchedule::Kind mu_mode = MuSchedule::Kind::Linear;
  double mu = 1.0;
  std::vector<double> hessian_diag;
  double dt = 1e-3;
  double t_start_offset = 1e-4;

  /// Steps (discrete) or t_end (continuous).
  double horizon = 0.0;
  std::vector<double> checkpoints;
  int replications = 100;
  std::uint64_t base_seed = 0;
  std::string output_path;
  int threads = 1;
};

/// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Validates cross-field constraints and fills problem-dependent defaults.
/// parse_config calls this; call it again after changing fields.
void finalize_config(ExperimentConfig& config);

/// Everything needed to run a discrete experiment.
struct DiscreteSetup {
  StochasticProblem problem;
  MirrorMap map;
  Schedule schedule;
  BoundParams bound;
  BaselineOptions baseline;
  std::vector<std::int64_t> checkpoints;
  std::int64_t horizon;
};

struct ContinuousSetup {
  ContinuousSystem system;
  IntegrationOptions options;
  double V_at_xstar;
};

DiscreteSetup build_discrete(const ExperimentConfig& config);
ContinuousSetup build_continuous(const ExperimentConfig& config);

}  // namespace imd::harness

#endif  // IMD_HARNESS_CONFIG_HPP
