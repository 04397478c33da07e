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

#ifndef IMD_ORACLES_HPP
#define IMD_ORACLES_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>

#include "imd/geometry.hpp"
#include "imd/random.hpp"

namespace imd {

/// Smooth convex test function with known minimizer, for the continuous
/// dynamics and for noiseless discrete runs.
class DeterministicProblem {
 public:
  enum class Kind { Quadratic, LinearOverSimplex };

  /// f(x) = 0.5 (x - x*)^T A (x - x*), f* = 0. A must be symmetric positive
  /// semidefinite (A = 0 gives the constant function).
  static DeterministicProblem quadratic(Eigen::MatrixXd A, Point x_star);
  /// f(x) = <cost, x> over the simplex; x* is the vertex of the cheapest
  /// coordinate (lowest index on ties).
  static DeterministicProblem linear_over_simplex(DualVector cost);

  Kind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(x_star_.size()); }
  double f(const Point& x) const;
  DualVector grad_f(const Point& x) const;
  double f_star() const { return f_star_; }
  const Point& x_star() const { return x_star_; }
  const Eigen::MatrixXd& hessian() const { return A_; }
  const DualVector& cost() const { return cost_; }

 private:
  DeterministicProblem() = default;

  Kind kind_ = Kind::Quadratic;
  Eigen::MatrixXd A_;
  DualVector cost_;
  Point x_star_;
  double f_star_ = 0.0;
};

/// f(x) = E Q(x, Z) over a compact X, with an analytic expectation and an
/// analytic second-moment constant L: sup_x E|grad_x Q(x, Z)|_*^2 <= L^2.
class StochasticProblem {
 public:
  enum class LossKind { LinearLoss, QuadraticNoise };

  /// Q(x, Z) = <x, Z> on the simplex, Z_i ~ U[mean_i - h, mean_i + h]
  /// independently. Dual norm is l_inf, L = max_i |mean_i| + h.
  static StochasticProblem linear_loss(DualVector mean, double halfwidth);
  /// Q(x, Z) = 0.5 |x - Z|_2^2 with Z = x* + xi, xi_i ~ U[-h, h]
  /// independently, x* in X (box or ball). Dual norm is l2 and
  /// L^2 = max_{x in X} |x - x*|^2 + N h^2 / 3, the exact supremum.
  static StochasticProblem quadratic_noise(FeasibleSet set, Point x_star,
                                           double halfwidth);

  LossKind kind() const { return kind_; }
  int dimension() const { return set_.dimension(); }
  const FeasibleSet& set() const { return set_; }
  NormPair norms() const { return norms_; }
  double L_bound() const { return L_; }
  double halfwidth() const { return halfwidth_; }
  const DualVector& center() const { return center_; }

  double f(const Point& x) const;
  DualVector grad_f(const Point& x) const;
  double f_star() const { return f_star_; }
  const Point& x_star() const { return x_star_; }

  DualVector sample(CounterRng& rng) const;
  double loss(const Point& x, const DualVector& z) const;
  DualVector loss_grad(const Point& x, const DualVector& z) const;

 private:
  StochasticProblem(LossKind kind, FeasibleSet set, NormPair norms)
      : kind_(kind), set_(std::move(set)), norms_(norms) {}

  LossKind kind_;
  FeasibleSet set_;
  NormPair norms_;
  // Mean of Z (linear loss) or x* (quadratic noise).
  DualVector center_;
  double halfwidth_ = 0.0;
  double L_ = 0.0;
  Point x_star_;
  double f_star_ = 0.0;
};

/// Seeded i.i.d. stream of stochastic subgradients u_k(x) = grad_x Q(x, Z_k).
/// The problem must outlive the stream.
class SubgradientStream {
 public:
  SubgradientStream(const StochasticProblem& problem, std::uint64_t seed)
      : problem_(&problem), rng_(seed), seed_(seed) {}

  /// Draws Z_{k+1} and returns grad_x Q(x, Z_{k+1}). Throws
  /// InfeasiblePointError when x is outside X.
  DualVector next_subgradient(const Point& x);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t count() const { return count_; }

 private:
  const StochasticProblem* problem_;
  CounterRng rng_;
  std::uint64_t seed_;
  std::uint64_t count_ = 0;
};

/// |(1/n) sum_k u_k(x) - grad f(x)|_*.
double unbiasedness_probe(const StochasticProblem& problem, const Point& x,
                          int n, std::uint64_t seed);

/// max over the grid of (1/n) sum_k |u_k(x)|_*^2.
double second_moment_probe(const StochasticProblem& problem,
                           std::span<const Point> grid, int n,
                           std::uint64_t seed);

/// A random point of X (Dirichlet(1) on the simplex, uniform on box/ball).
Point random_point(const FeasibleSet& set, CounterRng& rng);

}  // namespace imd

#endif  // IMD_ORACLES_HPP
