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

#ifndef IMD_HARNESS_CHECKS_HPP
#define IMD_HARNESS_CHECKS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "imd/geometry.hpp"
#include "imd/random.hpp"

namespace imd::harness {

// Property suites behind the `check` subcommand.

struct CheckLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Random (beta, zeta) with beta log-uniform in [e^-1.5, e^1.5] and zeta
/// Gaussian with a log-uniform scale relative to beta.
std::pair<double, DualVector> random_beta_zeta(int dimension, CounterRng& rng);

/// Max over samples of |central difference of W_beta - grad W_beta|_inf /
/// max(|grad W_beta|_inf, 1).
double gradient_consistency(const MirrorMap& map, int samples, std::uint64_t seed,
                            double h = 1e-6);

/// On the 2-simplex with the entropic prox, compares the closed-form value
/// and argmax of W_beta against a zooming grid search over the segment;
/// returns the larger of the two worst discrepancies.
double simplex2_grid_error(int samples, std::uint64_t seed);

/// Max feasibility violation of -grad W_beta(zeta) over random samples.
double argmax_violation(const MirrorMap& map, int samples, std::uint64_t seed);

/// The geometries the check suites sweep: entropic simplex (N = 5),
/// Euclidean box (N = 4) and Euclidean ball (N = 3).
std::vector<std::pair<std::string, MirrorMap>> reference_geometries();

/// suite is gradients, lipschitz, feasibility or all; throws
/// InvalidArgumentError otherwise.
std::vector<CheckLine> run_check_suite(std::string_view suite, std::uint64_t seed);

/// One PASS/FAIL line per check; 0 if all passed, 1 otherwise.
int print_checks(std::ostream& out, const std::vector<CheckLine>& lines);

}  // namespace imd::harness

#endif  // IMD_HARNESS_CHECKS_HPP
