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

#include "imd/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "imd/errors.hpp"

namespace imd {

// ---------------------------------------------------------------------------
// DeterministicProblem

DeterministicProblem DeterministicProblem::quadratic(Eigen::MatrixXd A,
                                                     Point x_star) {
  const Eigen::Index n = x_star.size();
  if (n < 1 || A.rows() != n || A.cols() != n) {
    throw InvalidArgumentError("quadratic: A must be N x N with N = dim(x*)");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgumentError("quadratic: A must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw InvalidArgumentError("quadratic: A must be positive semidefinite");
  }
  DeterministicProblem p;
  p.kind_ = Kind::Quadratic;
  p.A_ = std::move(A);
  p.x_star_ = std::move(x_star);
  p.f_star_ = 0.0;
  return p;
}

DeterministicProblem DeterministicProblem::linear_over_simplex(DualVector cost) {
  if (cost.size() < 1) throw InvalidArgumentError("linear_over_simplex: empty cost");
  DeterministicProblem p;
  p.kind_ = Kind::LinearOverSimplex;
  Eigen::Index best = 0;
  p.f_star_ = cost.minCoeff(&best);
  p.x_star_ = Point::Zero(cost.size());
  p.x_star_[best] = 1.0;
  p.cost_ = std::move(cost);
  return p;
}

double DeterministicProblem::f(const Point& x) const {
  if (kind_ == Kind::LinearOverSimplex) return cost_.dot(x);
  const Point e = x - x_star_;
  return 0.5 * e.dot(A_ * e);
}

DualVector DeterministicProblem::grad_f(const Point& x) const {
  if (kind_ == Kind::LinearOverSimplex) return cost_;
  return A_ * (x - x_star_);
}

// ---------------------------------------------------------------------------
// StochasticProblem

StochasticProblem StochasticProblem::linear_loss(DualVector mean,
                                                 double halfwidth) {
  if (mean.size() < 1) throw InvalidArgumentError("linear_loss: empty mean");
  if (!std::isfinite(halfwidth) || halfwidth < 0.0) {
    throw InvalidArgumentError("linear_loss: halfwidth must be >= 0");
  }
  const int n = static_cast<int>(mean.size());
  StochasticProblem p(LossKind::LinearLoss, FeasibleSet::simplex(n),
                      NormPair(NormTag::L1_Linf));
  p.halfwidth_ = halfwidth;
  p.L_ = mean.cwiseAbs().maxCoeff() + halfwidth;
  Eigen::Index best = 0;
  p.f_star_ = mean.minCoeff(&best);
  p.x_star_ = Point::Zero(n);
  p.x_star_[best] = 1.0;
  p.center_ = std::move(mean);
  return p;
}

StochasticProblem StochasticProblem::quadratic_noise(FeasibleSet set,
                                                     Point x_star,
                                                     double halfwidth) {
  if (set.kind() == FeasibleSet::Kind::Simplex) {
    throw GeometryMismatchError("quadratic_noise runs on a box or ball");
  }
  if (!set.contains(x_star)) {
    throw InfeasiblePointError("quadratic_noise: x* must lie in X");
  }
  if (!std::isfinite(halfwidth) || halfwidth < 0.0) {
    throw InvalidArgumentError("quadratic_noise: halfwidth must be >= 0");
  }
  const double n = set.dimension();
  const double noise_second_moment = n * halfwidth * halfwidth / 3.0;
  const double sup_sq = set.max_sq_distance_from(x_star);
  StochasticProblem p(LossKind::QuadraticNoise, std::move(set),
                      NormPair(NormTag::L2_L2));
  p.halfwidth_ = halfwidth;
  p.L_ = std::sqrt(sup_sq + noise_second_moment);
  p.f_star_ = 0.5 * noise_second_moment;
  p.x_star_ = x_star;
  p.center_ = std::move(x_star);
  return p;
}

double StochasticProblem::f(const Point& x) const {
  if (kind_ == LossKind::LinearLoss) return center_.dot(x);
  return 0.5 * (x - x_star_).squaredNorm() + f_star_;
}

DualVector StochasticProblem::grad_f(const Point& x) const {
  if (kind_ == LossKind::LinearLoss) return center_;
  return x - x_star_;
}

DualVector StochasticProblem::sample(CounterRng& rng) const {
  DualVector z(center_.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z[i] = center_[i] + halfwidth_ * (2.0 * rng.uniform() - 1.0);
  }
  return z;
}

double StochasticProblem::loss(const Point& x, const DualVector& z) const {
  if (kind_ == LossKind::LinearLoss) return x.dot(z);
  return 0.5 * (x - z).squaredNorm();
}

DualVector StochasticProblem::loss_grad(const Point& x,
                                        const DualVector& z) const {
  if (kind_ == LossKind::LinearLoss) return z;
  return x - z;
}

DualVector SubgradientStream::next_subgradient(const Point& x) {
  if (!problem_->set().contains(x)) {
    throw InfeasiblePointError("next_subgradient: point outside the feasible set");
  }
  const DualVector z = problem_->sample(rng_);
  ++count_;
  return problem_->loss_grad(x, z);
}

// ---------------------------------------------------------------------------
// Probes

double unbiasedness_probe(const StochasticProblem& problem, const Point& x,
                          int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("unbiasedness_probe: n must be >= 1");
  SubgradientStream stream(problem, seed);
  DualVector sum = DualVector::Zero(problem.dimension());
  for (int k = 0; k < n; ++k) sum += stream.next_subgradient(x);
  return problem.norms().dual(sum / n - problem.grad_f(x));
}

double second_moment_probe(const StochasticProblem& problem,
                           std::span<const Point> grid, int n,
                           std::uint64_t seed) {
  if (grid.empty()) throw InvalidArgumentError("second_moment_probe: empty grid");
  if (n < 1) throw InvalidArgumentError("second_moment_probe: n must be >= 1");
  const NormPair norms = problem.norms();
  double worst = 0.0;
  std::uint64_t stream_id = 0;
  for (const Point& x : grid) {
    SubgradientStream stream(problem, splitmix64_mix(seed + stream_id++));
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = norms.dual(stream.next_subgradient(x));
      total += d * d;
    }
    worst = std::max(worst, total / n);
  }
  return worst;
}

Point random_point(const FeasibleSet& set, CounterRng& rng) {
  const int n = set.dimension();
  Point x(n);
  switch (set.kind()) {
    case FeasibleSet::Kind::Simplex: {
      for (int i = 0; i < n; ++i) x[i] = -std::log(1.0 - rng.uniform());
      const double total = x.sum();
      if (total > 0.0) {
        x /= total;
      } else {
        x.setConstant(1.0 / n);
      }
      return x;
    }
    case FeasibleSet::Kind::Box:
      for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(set.lower()[i], set.upper()[i]);
      }
      return x;
    case FeasibleSet::Kind::Ball: {
      for (int i = 0; i < n; ++i) x[i] = rng.normal();
      const double norm = x.norm();
      const double r = set.radius() * std::pow(rng.uniform(), 1.0 / n);
      if (norm > 0.0) x *= r / norm;
      x += set.center();
      return set.project(x);
    }
  }
  return x;
}

}  // namespace imd
