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

// imdbench: run inertial mirror descent experiments and property checks.
//
//   imdbench run    --config <path> [--out <dir>] [--replications N] [--seed S]
//   imdbench check  [--suite gradients|lipschitz|feasibility|all]
//   imdbench sweep  --config <path> --beta0 <comma list>
//   imdbench report --in <csv>
//
// Exit codes: 0 pass, 1 bound/check failure, 2 usage/config error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "imd/harness/checks.hpp"
#include "imd/harness/config.hpp"
#include "imd/harness/experiment.hpp"
#include "imd/harness/report.hpp"

namespace {

constexpr int kExitUsage = 2;

using imd::harness::ExperimentConfig;

struct CommonRunArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonRunArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "directory for the CSV output");
  cmd->add_option("--replications", args.replications, "override replications")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "override base_seed");
  cmd->add_option("--threads", args.threads, "concurrent replications")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig load_with_overrides(const CommonRunArgs& args) {
  ExperimentConfig config = imd::harness::load_config(args.config_path);
  if (args.replications) config.replications = *args.replications;
  if (args.seed) config.base_seed = *args.seed;
  if (args.threads) config.threads = *args.threads;
  imd::harness::finalize_config(config);
  return config;
}

std::string place_output(const std::string& out_dir, const std::string& path) {
  if (out_dir.empty()) return path;
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / std::filesystem::path(path).filename()).string();
}

int cmd_run(const CommonRunArgs& args) {
  ExperimentConfig config = load_with_overrides(args);
  config.output_path = place_output(args.out_dir, config.output_path);
  const auto result = imd::harness::run_experiment(config);
  return imd::harness::report(result, config, std::cout);
}

int cmd_sweep(const CommonRunArgs& args, const std::vector<double>& betas) {
  const ExperimentConfig base = load_with_overrides(args);
  if (base.mode != imd::harness::Mode::Discrete) {
    throw imd::harness::ConfigError(0, "sweep needs a discrete experiment");
  }
  int code = 0;
  std::printf("%14s %12s %14s %14s %10s  %s\n", "beta0", "t", "mean_gap", "bound",
              "ratio", "status");
  for (double beta0 : betas) {
    if (!(beta0 > 0.0)) throw imd::harness::ConfigError(0, "--beta0 values must be positive");
    ExperimentConfig config = base;
    config.beta0 = beta0;
    char suffix[64];
    std::snprintf(suffix, sizeof suffix, "_beta0_%g", beta0);
    config.experiment_id = base.experiment_id + suffix;
    config.output_path = place_output(args.out_dir, config.experiment_id + ".csv");
    const auto result = imd::harness::run_experiment(config);
    std::ofstream file(config.output_path);
    if (!file) throw imd::harness::OutputError("cannot write '" + config.output_path + "'");
    imd::harness::write_csv(file, result);
    for (const auto& s : result.summary) {
      std::printf("%14.6g %12.6g %14.6e %14.6e %10.4f  %s\n", beta0, s.t, s.mean_gap,
                  s.bound, s.ratio, s.pass ? "PASS" : "FAIL");
      if (!s.pass) code = 1;
    }
  }
  return code;
}

int cmd_report(const std::string& in_path, double slack) {
  std::ifstream in(in_path);
  if (!in) throw imd::harness::ConfigError(0, "cannot read '" + in_path + "'");
  const auto records = imd::harness::read_csv(in);
  return imd::harness::print_summary(std::cout, in_path,
                                     imd::harness::summarize(records, slack));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inertial mirror descent experiments and verification"};
  app.require_subcommand(1);

  CommonRunArgs run_args;
  auto* run = app.add_subcommand("run", "run an experiment and check it against its bound");
  add_common(run, run_args);

  std::string suite = "all";
  std::uint64_t check_seed = 20261014;
  auto* check = app.add_subcommand("check", "run the property suites");
  check->add_option("--suite", suite, "which suite")
      ->check(CLI::IsMember({"gradients", "lipschitz", "feasibility", "all"}));
  check->add_option("--seed", check_seed, "sampling seed");

  CommonRunArgs sweep_args;
  std::vector<double> betas;
  auto* sweep = app.add_subcommand("sweep", "run a discrete experiment over a beta0 grid");
  add_common(sweep, sweep_args);
  sweep->add_option("--beta0", betas, "comma-separated beta0 values")
      ->required()
      ->delimiter(',');

  std::string in_path;
  double slack = 0.0;
  auto* report = app.add_subcommand("report", "re-summarize an existing CSV");
  report->add_option("--in", in_path, "CSV produced by `run`")->required();
  report->add_option("--slack", slack, "relative slack on the bound (1e-3 for continuous runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*check) {
      const auto lines = imd::harness::run_check_suite(suite, check_seed);
      return imd::harness::print_checks(std::cout, lines);
    }
    if (*sweep) return cmd_sweep(sweep_args, betas);
    if (*report) return cmd_report(in_path, slack);
  } catch (const imd::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const imd::harness::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const imd::harness::RunError& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
