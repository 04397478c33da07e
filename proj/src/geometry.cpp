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

#include "imd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "imd/errors.hpp"
#include "imd/random.hpp"

namespace imd {

namespace {

void require_positive_beta(double beta) {
  if (!(beta > 0.0)) throw NonpositiveBetaError(beta);
}

void require_dimension(const Eigen::VectorXd& v, int n, const char* what) {
  if (v.size() != n) {
    throw InvalidArgumentError(std::string(what) + ": expected dimension " +
                               std::to_string(n) + ", got " +
                               std::to_string(v.size()));
  }
}

}  // namespace

double NormPair::primal(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return tag_ == NormTag::L2_L2 ? x.norm() : x.lpNorm<1>();
}

double NormPair::dual(const Eigen::Ref<const Eigen::VectorXd>& zeta) const {
  if (tag_ == NormTag::L2_L2) return zeta.norm();
  return zeta.size() == 0 ? 0.0 : zeta.lpNorm<Eigen::Infinity>();
}

// ---------------------------------------------------------------------------
// FeasibleSet

FeasibleSet FeasibleSet::simplex(int dimension) {
  if (dimension < 1) throw InvalidArgumentError("simplex dimension must be >= 1");
  Point center = Point::Constant(dimension, 1.0 / dimension);
  return FeasibleSet(Kind::Simplex, Eigen::VectorXd::Zero(dimension),
                     Eigen::VectorXd::Ones(dimension), std::move(center), 0.0);
}

FeasibleSet FeasibleSet::box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    throw InvalidArgumentError("box bounds must be nonempty and equal length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) ||
        !(lower[i] <= upper[i])) {
      throw InvalidArgumentError("box bounds must be finite with lower <= upper");
    }
  }
  Point center = 0.5 * (lower + upper);
  return FeasibleSet(Kind::Box, std::move(lower), std::move(upper),
                     std::move(center), 0.0);
}

FeasibleSet FeasibleSet::box(int dimension, double lower, double upper) {
  if (dimension < 1) throw InvalidArgumentError("box dimension must be >= 1");
  return box(Eigen::VectorXd::Constant(dimension, lower),
             Eigen::VectorXd::Constant(dimension, upper));
}

FeasibleSet FeasibleSet::ball(Point center, double radius) {
  if (center.size() < 1) throw InvalidArgumentError("ball dimension must be >= 1");
  if (!std::isfinite(radius) || !(radius > 0.0)) {
    throw InvalidArgumentError("ball radius must be positive and finite");
  }
  Eigen::VectorXd lower = center.array() - radius;
  Eigen::VectorXd upper = center.array() + radius;
  return FeasibleSet(Kind::Ball, std::move(lower), std::move(upper),
                     std::move(center), radius);
}

double FeasibleSet::violation(const Point& x) const {
  require_dimension(x, dimension(), "FeasibleSet::violation");
  switch (kind_) {
    case Kind::Simplex: {
      const double neg = std::max(0.0, -x.minCoeff());
      return std::max(neg, std::abs(x.sum() - 1.0));
    }
    case Kind::Box: {
      const double below = (lower_ - x).maxCoeff();
      const double above = (x - upper_).maxCoeff();
      return std::max({0.0, below, above});
    }
    case Kind::Ball:
      return std::max(0.0, (x - center_).norm() - radius_);
  }
  return 0.0;
}

Point FeasibleSet::project(const Point& y) const {
  require_dimension(y, dimension(), "FeasibleSet::project");
  switch (kind_) {
    case Kind::Simplex:
      return project_onto_simplex(y);
    case Kind::Box:
      return y.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::Ball: {
      const double d = (y - center_).norm();
      if (d <= radius_) return y;
      return center_ + (radius_ / d) * (y - center_);
    }
  }
  return y;
}

double FeasibleSet::max_sq_distance_from(const Point& p) const {
  require_dimension(p, dimension(), "FeasibleSet::max_sq_distance_from");
  switch (kind_) {
    case Kind::Simplex:
      // A convex function attains its max over the simplex at a vertex.
      return p.squaredNorm() - 2.0 * p.minCoeff() + 1.0;
    case Kind::Box: {
      double total = 0.0;
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double d = std::max(std::abs(p[i] - lower_[i]),
                                  std::abs(upper_[i] - p[i]));
        total += d * d;
      }
      return total;
    }
    case Kind::Ball: {
      const double d = (p - center_).norm() + radius_;
      return d * d;
    }
  }
  return 0.0;
}

Point project_onto_simplex(const Point& y) {
  const Eigen::Index n = y.size();
  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).cwiseMax(0.0);
}

// ---------------------------------------------------------------------------
// ProxFunction

ProxFunction ProxFunction::entropic(int dimension) {
  if (dimension < 1) throw InvalidArgumentError("entropic dimension must be >= 1");
  return ProxFunction(Kind::Entropic, 1.0,
                      Point::Constant(dimension, 1.0 / dimension));
}

ProxFunction ProxFunction::euclidean(Point center) {
  if (center.size() < 1) throw InvalidArgumentError("Euclidean prox needs a center");
  return ProxFunction(Kind::EuclideanHalfSq, 1.0, std::move(center));
}

NormPair ProxFunction::norms() const {
  return NormPair(kind_ == Kind::Entropic ? NormTag::L1_Linf : NormTag::L2_L2);
}

double ProxFunction::value(const Point& x) const {
  require_dimension(x, dimension(), "ProxFunction::value");
  if (kind_ == Kind::EuclideanHalfSq) return 0.5 * (x - center_).squaredNorm();
  double total = std::log(static_cast<double>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) total += x[i] * std::log(x[i]);
  }
  // Rounding can push the uniform point a hair below zero.
  return std::max(total, 0.0);
}

// ---------------------------------------------------------------------------
// MirrorMap

MirrorMap::MirrorMap(ProxFunction prox, FeasibleSet set)
    : prox_(std::move(prox)), set_(std::move(set)) {
  if (prox_.dimension() != set_.dimension()) {
    throw GeometryMismatchError("prox function and feasible set dimensions differ");
  }
  const bool entropic = prox_.kind() == ProxFunction::Kind::Entropic;
  const bool simplex = set_.kind() == FeasibleSet::Kind::Simplex;
  if (entropic != simplex) {
    throw GeometryMismatchError(
        entropic ? "entropic prox function requires the simplex"
                 : "Euclidean prox function requires a box or ball");
  }
  if (!entropic && !set_.contains(prox_.center())) {
    throw GeometryMismatchError("Euclidean prox center must lie in the set");
  }
}

double MirrorMap::prox_value(const Point& x) const {
  if (!set_.contains(x)) {
    throw InfeasiblePointError("prox_value: point outside the feasible set");
  }
  return prox_.value(x);
}

double MirrorMap::max_prox_value() const {
  if (prox_.kind() == ProxFunction::Kind::Entropic) {
    return std::log(static_cast<double>(dimension()));
  }
  return 0.5 * set_.max_sq_distance_from(prox_.center());
}

Point MirrorMap::mirror_point(double beta, const DualVector& zeta) const {
  require_positive_beta(beta);
  require_dimension(zeta, dimension(), "MirrorMap::mirror_point");
  if (prox_.kind() == ProxFunction::Kind::Entropic) {
    // softmax(-zeta / beta), shifted by the max exponent.
    Eigen::ArrayXd logits = -zeta.array() / beta;
    logits -= logits.maxCoeff();
    Eigen::ArrayXd weights = logits.exp();
    return (weights / weights.sum()).matrix();
  }
  return set_.project(prox_.center() - zeta / beta);
}

Point MirrorMap::grad_W(double beta, const DualVector& zeta) const {
  return -mirror_point(beta, zeta);
}

double MirrorMap::fenchel_value(double beta, const DualVector& zeta) const {
  require_positive_beta(beta);
  require_dimension(zeta, dimension(), "MirrorMap::fenchel_value");
  if (prox_.kind() == ProxFunction::Kind::Entropic) {
    // beta * (logsumexp(-zeta / beta) - ln N)
    const Eigen::ArrayXd logits = -zeta.array() / beta;
    const double top = logits.maxCoeff();
    const double lse = top + std::log((logits - top).exp().sum());
    return beta * (lse - std::log(static_cast<double>(dimension())));
  }
  const Point x = mirror_point(beta, zeta);
  return -zeta.dot(x) - beta * prox_.value(x);
}

// ---------------------------------------------------------------------------
// Lipschitz sampling

double lipschitz_ratio(const MirrorMap& map, double beta,
                       std::span<const std::pair<DualVector, DualVector>> pairs) {
  require_positive_beta(beta);
  const NormPair norms = map.norms();
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    const double dz = norms.dual(a - b);
    if (dz == 0.0) continue;
    const double dx = norms.primal(map.grad_W(beta, a) - map.grad_W(beta, b));
    worst = std::max(worst, dx / dz);
  }
  return worst;
}

double lipschitz_probe(const MirrorMap& map, double beta, int pair_count,
                       std::uint64_t seed) {
  require_positive_beta(beta);
  if (pair_count < 1) throw InvalidArgumentError("pair_count must be >= 1");
  const int n = map.dimension();
  CounterRng rng(seed);
  std::vector<std::pair<DualVector, DualVector>> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count));
  for (int p = 0; p < pair_count; ++p) {
    // Log-uniform magnitudes so that both the saturated and the near-linear
    // regimes of the map are visited, and both far and near pairs.
    const double scale = beta * std::exp(rng.uniform(-3.0, 3.0));
    const double gap = beta * std::exp(rng.uniform(-6.0, 2.0));
    DualVector a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = scale * rng.normal();
    for (int i = 0; i < n; ++i) b[i] = a[i] + gap * rng.normal();
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return lipschitz_ratio(map, beta, pairs);
}

// ---------------------------------------------------------------------------
// Continuous-time conjugate pairs

double ConjugatePair::W(const DualVector& zeta) const {
  if (kind_ == Kind::Identity) return 0.5 * zeta.squaredNorm();
  return (zeta.array().cosh() - 1.0).sum();
}

Point ConjugatePair::grad_W(const DualVector& zeta) const {
  if (kind_ == Kind::Identity) return zeta;
  return zeta.array().sinh().matrix();
}

double ConjugatePair::V(const Point& x) const {
  if (kind_ == Kind::Identity) return 0.5 * x.squaredNorm();
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    total += x[i] * std::asinh(x[i]) - std::sqrt(1.0 + x[i] * x[i]) + 1.0;
  }
  return total;
}

DualVector ConjugatePair::grad_V(const Point& x) const {
  if (kind_ == Kind::Identity) return x;
  return x.array().asinh().matrix();
}

ConjugatePair continuous_conjugates(ConjugatePair::Kind kind) {
  return ConjugatePair(kind);
}

ConjugatePair continuous_conjugates(std::string_view kind) {
  if (kind == "identity") return ConjugatePair(ConjugatePair::Kind::Identity);
  if (kind == "cosh_sum") return ConjugatePair(ConjugatePair::Kind::CoshSum);
  throw UnknownKindError("unknown conjugate pair '" + std::string(kind) + "'");
}

}  // namespace imd
