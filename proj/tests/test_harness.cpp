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

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "imd/harness/checks.hpp"
#include "imd/harness/config.hpp"
#include "imd/harness/experiment.hpp"
#include "imd/harness/report.hpp"

using namespace imd;
using namespace imd::harness;

namespace {

// Drops the trailing wall_time field of every CSV line.
std::string without_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

constexpr const char* kSmall = R"(
experiment_id = small
problem = quadratic_noise
dimension = 3
prox = euclidean
set = box
horizon = 300
checkpoints = 300, 10, 100
replications = 12
base_seed = 7
)";

}  // namespace

TEST_CASE("minimal discrete config gets every default") {
  const auto c = parse_config("problem = linear_loss\nprox = entropic\nset = simplex\nhorizon = 50\n");
  CHECK(c.mode == Mode::Discrete);
  CHECK(c.algorithm == Algorithm::IMD);
  CHECK(c.dimension == 10);
  CHECK(c.replications == 100);
  CHECK(c.base_seed == 0);
  CHECK(c.dt == 1e-3);
  CHECK(c.t_start_offset == 1e-4);
  CHECK(c.checkpoints == std::vector<double>{50});
  CHECK(c.output_path == "experiment.csv");
  CHECK(!c.beta0.has_value());
  REQUIRE(c.linear_means.size() == 10);
  CHECK(c.linear_means.front() == -0.5);
  CHECK(c.linear_means.back() == 0.5);
}

TEST_CASE("corollary beta0 uses V_bar = max V") {
  const auto c = parse_config("problem = linear_loss\nprox = entropic\nset = simplex\nhorizon = 5\nbeta0 = corollary\n");
  const auto setup = build_discrete(c);
  CHECK(setup.bound.V_bar == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(setup.bound.L == doctest::Approx(1.0));
  CHECK(setup.schedule.beta0() == doctest::Approx(1.0 / std::sqrt(std::log(10.0))).epsilon(1e-15));
  CHECK(setup.schedule.is_canonical());

  const auto e = parse_config("problem = linear_loss\nprox = entropic\nset = simplex\nhorizon = 5\nbeta0 = 2.5\n");
  CHECK(build_discrete(e).schedule.beta0() == 2.5);
}

TEST_CASE("config errors") {
  auto error_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string base = "problem = linear_loss\nprox = entropic\nset = simplex\nhorizon = 10\n";
  CHECK(error_of(base + "checkpoints = 0\n").find("checkpoint 0 outside") != std::string::npos);
  CHECK(error_of(base + "checkpoints = 11\n").find("outside") != std::string::npos);
  CHECK(error_of(base + "checkpoints = 2.5\n").find("integer") != std::string::npos);
  CHECK(error_of(base + "colour = blue\n") == "line 5: unknown key 'colour'");
  CHECK(error_of(base + "horizon = 20\n").find("line 5: duplicate key") != std::string::npos);
  CHECK(error_of("problem = linear_loss\nthis line has no equals\n").find("line 2") != std::string::npos);
  CHECK(error_of("problem = linear_loss\nprox = entropic\nset = box\nhorizon = 10\n")
            .find("entropic prox requires set = simplex") != std::string::npos);
  CHECK(error_of("problem = quadratic_noise\nprox = euclidean\nset = simplex\nhorizon = 10\n") != "no error");
  CHECK(error_of(base + "replications = 0\n").find("replications") != std::string::npos);
  CHECK(error_of(base + "beta0 = -1\n") != "no error");
  CHECK(error_of("problem = linear_loss\nprox = entropic\nset = simplex\n").find("horizon") != std::string::npos);
  CHECK(error_of("mode = continuous\nproblem = quadratic\nprox = entropic\nhorizon = 1\n") != "no error");
  CHECK(error_of(base + "algorithm = heavy_ball\n").find("simplex rejected") != std::string::npos);
  CHECK(error_of("problem = quadratic_noise\nprox = euclidean\nset = box\nhorizon = 10\nx_star = 3, 0\n")
            .find("x_star") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("record counts and ordering") {
  const auto c = parse_config(kSmall);
  CHECK(c.checkpoints == std::vector<double>{10, 100, 300});
  const auto result = run_experiment(c, 1);
  CHECK(result.runs.size() == 12 * 3);
  CHECK(result.aggregates.size() == 3);
  const std::string csv = to_csv(result);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 12 * 3 + 3);
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    CHECK(result.runs[i].run_id == std::to_string(i / 3));
    CHECK(result.runs[i].seed == 7 + i / 3);
  }
  for (const auto& s : result.summary) CHECK(s.pass);
}

TEST_CASE("replications = 1 with zero noise: the mean is the single run") {
  auto c = parse_config(kSmall);
  c.replications = 1;
  c.noise_halfwidth = 0.0;
  finalize_config(c);
  const auto result = run_experiment(c, 1);
  for (std::size_t i = 0; i < result.summary.size(); ++i) {
    CHECK(result.summary[i].mean_gap == result.runs[i].gap);
    CHECK(result.aggregates[i].gap == result.runs[i].gap);
  }
}

TEST_CASE("output is independent of thread count") {
  const auto c = parse_config(kSmall);
  const std::string one = without_wall_time(to_csv(run_experiment(c, 1)));
  CHECK(one == without_wall_time(to_csv(run_experiment(c, 1))));
  CHECK(one == without_wall_time(to_csv(run_experiment(c, 3))));
  CHECK(one == without_wall_time(to_csv(run_experiment(c, 16))));
  auto other = c;
  other.base_seed = 8;
  CHECK(one != without_wall_time(to_csv(run_experiment(other, 1))));
}

TEST_CASE("CSV round trip and summary") {
  const auto result = run_experiment(parse_config(kSmall), 2);
  std::istringstream in(to_csv(result));
  const auto records = read_csv(in);
  CHECK(records.size() == result.runs.size() + result.aggregates.size());
  const auto again = summarize(records, 0.0);
  REQUIRE(again.size() == result.summary.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].mean_gap == result.summary[i].mean_gap);
    CHECK(again[i].bound == result.summary[i].bound);
  }
  std::ostringstream out;
  CHECK(print_summary(out, "small", again) == 0);
  CHECK(out.str().find("PASS") != std::string::npos);

  std::istringstream bad_header("run,seed\n");
  CHECK_THROWS_AS(read_csv(bad_header), ConfigError);
  std::istringstream short_row(std::string(kCsvHeader) + "\n0,1,2\n");
  CHECK_THROWS_AS(read_csv(short_row), ConfigError);
}

TEST_CASE("a violated bound fails and names the checkpoint") {
  std::vector<RunRecord> runs(2);
  runs[0] = RunRecord{"0", 0, 10.0, 0.5, 0.25, 0.0, 0.0};
  runs[1] = RunRecord{"0", 0, 20.0, 0.1, 0.2, 0.0, 0.0};
  std::ostringstream out;
  CHECK(print_summary(out, "x", summarize(runs, 0.0)) == 1);
  CHECK(out.str().find("FAILED checkpoint t = 10") != std::string::npos);
  CHECK(out.str().find("t = 20") == std::string::npos);

  runs[0].gap = 0.1;
  runs[1].feasibility_violation = 1e-6;
  CHECK(!summarize(runs, 0.0)[1].pass);
}

TEST_CASE("continuous experiment") {
  const auto c = parse_config(R"(
mode = continuous
problem = quadratic
dimension = 5
horizon = 20
checkpoints = 1, 5, 20
)");
  const auto result = run_experiment(c, 1);
  REQUIRE(result.runs.size() == 3);
  CHECK(result.bound_slack == kContinuousBoundSlack);
  for (const auto& r : result.runs) {
    CHECK(r.bound == doctest::Approx(0.5 / r.t));
    CHECK(r.gap <= r.bound);
  }
  for (const auto& s : result.summary) CHECK(s.pass);
}

TEST_CASE("check suite") {
  const auto lines = run_check_suite("gradients", 3);
  CHECK(lines.size() == 4);
  for (const auto& l : lines) CHECK(l.pass);
  CHECK_THROWS_AS(run_check_suite("nonsense", 1), InvalidArgumentError);
  std::ostringstream out;
  CHECK(print_checks(out, {CheckLine{"x", 2.0, 1.0, false}}) == 1);
  CHECK(out.str().rfind("FAIL", 0) == 0);
}
