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

#ifndef IMD_GEOMETRY_HPP
#define IMD_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

namespace imd {

/// Primal iterate in X.
using Point = Eigen::VectorXd;
/// Element of the dual space (accumulated subgradients).
using DualVector = Eigen::VectorXd;

inline constexpr double kFeasibilityTol = 1e-12;

enum class NormTag { L2_L2, L1_Linf };

/// A primal norm together with its dual norm.
class NormPair {
 public:
  explicit NormPair(NormTag tag) : tag_(tag) {}

  double primal(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double dual(const Eigen::Ref<const Eigen::VectorXd>& zeta) const;
  NormTag tag() const { return tag_; }

 private:
  NormTag tag_;
};

/// Convex compact subset of R^N: probability simplex, axis-aligned box or
/// Euclidean ball.
class FeasibleSet {
 public:
  enum class Kind { Simplex, Box, Ball };

  static FeasibleSet simplex(int dimension);
  static FeasibleSet box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static FeasibleSet box(int dimension, double lower, double upper);
  static FeasibleSet ball(Point center, double radius);

  Kind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(lower_.size()); }

  /// Distance-like measure of how far x is outside the set; 0 inside.
  /// Simplex: max(max_i(-x_i), |sum x - 1|). Box: largest coordinate excess.
  /// Ball: max(0, |x - c| - r).
  double violation(const Point& x) const;
  bool contains(const Point& x, double tol = kFeasibilityTol) const {
    return x.size() == dimension() && violation(x) <= tol;
  }

  /// Euclidean projection onto the set.
  Point project(const Point& y) const;

  /// sup_{x in X} |x - p|_2^2.
  double max_sq_distance_from(const Point& p) const;

  // Box bounds, or the bounding box for simplex/ball.
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  FeasibleSet(Kind kind, Eigen::VectorXd lower, Eigen::VectorXd upper,
              Point center, double radius)
      : kind_(kind),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        center_(std::move(center)),
        radius_(radius) {}

  Kind kind_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  Point center_;
  double radius_;
};

/// Euclidean projection onto the probability simplex (sort-and-threshold).
Point project_onto_simplex(const Point& y);

/// Prox function V on X together with its strong-convexity modulus alpha
/// with respect to the primal norm of `norms()`.
class ProxFunction {
 public:
  enum class Kind { Entropic, EuclideanHalfSq };

  /// V(x) = ln N + sum x_i ln x_i on the simplex; alpha = 1 w.r.t. l1.
  static ProxFunction entropic(int dimension);
  /// V(x) = 0.5 |x - c|_2^2; alpha = 1 w.r.t. l2.
  static ProxFunction euclidean(Point center);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  NormPair norms() const;
  int dimension() const { return static_cast<int>(center_.size()); }
  /// Minimizer of V (uniform point, or c).
  const Point& center() const { return center_; }

  /// Raw evaluation with no feasibility check; 0 ln 0 is taken as 0.
  double value(const Point& x) const;

 private:
  ProxFunction(Kind kind, double alpha, Point center)
      : kind_(kind), alpha_(alpha), center_(std::move(center)) {}

  Kind kind_;
  double alpha_;
  Point center_;
};

/// The beta-conjugate of V over X,
///
///   W_beta(zeta) = sup_{x in X} { -<zeta, x> - beta V(x) },
///
/// and its gradient. The maximizer is -grad W_beta(zeta) and always lies in
/// X. Only the entropic/simplex and Euclidean/(box|ball) pairings are valid.
class MirrorMap {
 public:
  MirrorMap(ProxFunction prox, FeasibleSet set);

  const ProxFunction& prox() const { return prox_; }
  const FeasibleSet& set() const { return set_; }
  NormPair norms() const { return prox_.norms(); }
  int dimension() const { return set_.dimension(); }

  /// V(x); throws InfeasiblePointError outside X.
  double prox_value(const Point& x) const;
  /// max_{x in X} V(x).
  double max_prox_value() const;

  double fenchel_value(double beta, const DualVector& zeta) const;
  Point grad_W(double beta, const DualVector& zeta) const;
  /// -grad W_beta(zeta), the argmax in the definition of W_beta.
  Point mirror_point(double beta, const DualVector& zeta) const;

 private:
  ProxFunction prox_;
  FeasibleSet set_;
};

/// Largest |grad W(a) - grad W(b)| / |a - b|_* over sampled dual pairs.
/// Pairs with a == b (zero dual distance) are skipped.
double lipschitz_probe(const MirrorMap& map, double beta, int pair_count,
                       std::uint64_t seed);
double lipschitz_ratio(const MirrorMap& map, double beta,
                       std::span<const std::pair<DualVector, DualVector>> pairs);

/// Unconstrained conjugate pairs for the continuous-time dynamics, with
/// V(x) = sup_zeta { <zeta, x> - W(zeta) } and W(0) = V(0) = 0, grad W(0) = 0.
class ConjugatePair {
 public:
  enum class Kind {
    Identity,  // W = 0.5|z|^2
    CoshSum,   // W = sum(cosh z_i - 1)
  };

  explicit ConjugatePair(Kind kind) : kind_(kind) {}
  Kind kind() const { return kind_; }

  double W(const DualVector& zeta) const;
  Point grad_W(const DualVector& zeta) const;
  double V(const Point& x) const;
  /// Inverse of grad_W, i.e. grad V.
  DualVector grad_V(const Point& x) const;

 private:
  Kind kind_;
};

ConjugatePair continuous_conjugates(ConjugatePair::Kind kind);
/// "identity" or "cosh_sum"; throws UnknownKindError otherwise.
ConjugatePair continuous_conjugates(std::string_view kind);

}  // namespace imd

#endif  // IMD_GEOMETRY_HPP
