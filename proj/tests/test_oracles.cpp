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
#include <vector>

#include "imd/errors.hpp"
#include "imd/oracles.hpp"
#include "imd/random.hpp"

using namespace imd;

namespace {

DualVector linspace(double a, double b, int n) {
  DualVector v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

StochasticProblem make_linear(int n = 10) { return StochasticProblem::linear_loss(linspace(-0.5, 0.5, n), 0.5); }

StochasticProblem make_quadratic(double halfwidth = 0.5) {
  Point x_star(4);
  x_star << 0.6, -0.3, 0.9, 0.0;
  return StochasticProblem::quadratic_noise(FeasibleSet::box(4, -1.0, 1.0), x_star, halfwidth);
}

}  // namespace

TEST_CASE("counter generator") {
  // Reference SplitMix64 output for state 0.
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);

  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
  CHECK(a.counter() == 100);

  CounterRng u(1);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = u.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("deterministic problems") {
  Eigen::MatrixXd A(2, 2);
  A << 2.0, 0.5, 0.5, 1.0;
  Point x_star(2);
  x_star << 0.3, -0.7;
  const auto q = DeterministicProblem::quadratic(A, x_star);
  CHECK(q.grad_f(x_star).norm() == 0.0);
  CHECK(q.f(x_star) == 0.0);
  CounterRng rng(4);
  for (int s = 0; s < 100; ++s) {
    Point x(2);
    x << rng.normal(), rng.normal();
    CHECK(q.f(x) >= q.f_star());
  }

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(DeterministicProblem::quadratic(bad, x_star), InvalidArgumentError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.3, 0.0, 1.0;
  CHECK_THROWS_AS(DeterministicProblem::quadratic(asym, x_star), InvalidArgumentError);
  CHECK_NOTHROW(DeterministicProblem::quadratic(Eigen::MatrixXd::Zero(2, 2), x_star));

  DualVector cost(3);
  cost << 0.4, -0.2, 0.1;
  const auto lin = DeterministicProblem::linear_over_simplex(cost);
  CHECK(lin.f_star() == -0.2);
  CHECK(lin.x_star()[1] == 1.0);
  CHECK(lin.x_star().sum() == 1.0);
}

TEST_CASE("next_subgradient examples") {
  SUBCASE("linear loss: u_k(x) = Z_k regardless of x") {
    const auto p = make_linear(4);
    SubgradientStream s1(p, 9), s2(p, 9);
    Point x = Point::Constant(4, 0.25);
    Point y = Point::Zero(4);
    y[2] = 1.0;
    for (int k = 0; k < 50; ++k) {
      const DualVector u = s1.next_subgradient(x);
      CHECK(u == s2.next_subgradient(y));
      CHECK(u.cwiseAbs().maxCoeff() <= 1.0);
    }
    CHECK(s1.count() == 50);
  }
  SUBCASE("quadratic noise: u_k(x) = x - Z_k") {
    const auto p = make_quadratic();
    SubgradientStream s1(p, 3), s2(p, 3);
    const Point x = Point::Constant(4, 0.1);
    const Point y = Point::Constant(4, -0.4);
    for (int k = 0; k < 50; ++k) {
      const DualVector d = s1.next_subgradient(x) - s2.next_subgradient(y);
      CHECK((d - (x - y)).norm() <= 1e-15);
    }
  }
  SUBCASE("seed 42 determinism across re-instantiation") {
    const auto p = make_linear();
    const Point x = Point::Constant(10, 0.1);
    SubgradientStream a(p, 42);
    const DualVector a1 = a.next_subgradient(x), a2 = a.next_subgradient(x);
    SubgradientStream b(p, 42);
    CHECK(a1 == b.next_subgradient(x));
    CHECK(a2 == b.next_subgradient(x));
    CHECK(a1 != a2);
  }
  SUBCASE("infeasible point") {
    const auto p = make_linear(3);
    SubgradientStream s(p, 1);
    Point bad(3);
    bad << 0.5, 0.6, 0.0;
    CHECK_THROWS_AS(s.next_subgradient(bad), InfeasiblePointError);
  }
}

TEST_CASE("unbiasedness probe") {
  const int n = 100000;
  SUBCASE("quadratic noise") {
    const auto p = make_quadratic();
    Point x(4);
    x << -0.2, 0.5, 0.1, 0.9;
    CHECK(unbiasedness_probe(p, x, n, 5) <= 5.0 * p.L_bound() / std::sqrt(n));
  }
  SUBCASE("linear loss, symmetric Z around its mean") {
    const auto p = make_linear();
    const Point x = Point::Constant(10, 0.1);
    CHECK(unbiasedness_probe(p, x, n, 6) <= 5.0 * p.L_bound() / std::sqrt(n));
  }
  SUBCASE("zero noise, n = 1") {
    const auto p = make_quadratic(0.0);
    CHECK(unbiasedness_probe(p, Point::Constant(4, 0.3), 1, 7) == 0.0);
  }
}

TEST_CASE("second moment probe against the analytic L") {
  CounterRng rng(21);
  SUBCASE("linear loss, |Z|_inf <= 1") {
    const auto p = make_linear();
    CHECK(p.L_bound() == doctest::Approx(1.0));
    std::vector<Point> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(random_point(p.set(), rng));
    CHECK(second_moment_probe(p, grid, 100000, 8) <= 1.0);
  }
  SUBCASE("quadratic noise on a box") {
    const auto p = make_quadratic();
    std::vector<Point> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(random_point(p.set(), rng));
    const int n = 100000;
    const double m = second_moment_probe(p, grid, n, 9);
    CHECK(m <= p.L_bound() * p.L_bound() * (1.0 + 3.0 / std::sqrt(n)));
    // Crude bound: (diam + noise radius)^2.
    const double diam = 2.0 * std::sqrt(4.0);
    const double radius = 0.5 * std::sqrt(4.0);
    CHECK(m <= (diam + radius) * (diam + radius));
    // The supremum is attained at the farthest corner.
    Point corner(4);
    corner << -1.0, 1.0, -1.0, 1.0;
    std::vector<Point> worst = {corner};
    CHECK(second_moment_probe(p, worst, n, 10) ==
          doctest::Approx(p.L_bound() * p.L_bound()).epsilon(0.01));
  }
  SUBCASE("zero noise at x*") {
    const auto p = make_quadratic(0.0);
    std::vector<Point> grid = {p.x_star()};
    CHECK(second_moment_probe(p, grid, 10, 1) == 0.0);
  }
}

TEST_CASE("analytic f, f*, x*") {
  const auto q = make_quadratic();
  CHECK(q.f(q.x_star()) == q.f_star());
  CHECK(q.f_star() == doctest::Approx(4 * 0.25 / 6.0));
  CHECK(q.grad_f(q.x_star()).norm() == 0.0);
  const auto l = make_linear();
  CHECK(l.f_star() == doctest::Approx(-0.5));
  CHECK(l.x_star()[0] == 1.0);
  CHECK_THROWS_AS(StochasticProblem::quadratic_noise(FeasibleSet::simplex(3), Point::Constant(3, 1.0 / 3), 0.1),
                  GeometryMismatchError);
  CHECK_THROWS_AS(StochasticProblem::quadratic_noise(FeasibleSet::box(2, -1, 1), Point::Constant(2, 2.0), 0.1),
                  InfeasiblePointError);
}

TEST_CASE("losses are convex in x for every sample") {
  CounterRng rng(33);
  for (const auto& p : {make_linear(5), make_quadratic()}) {
    for (int s = 0; s < 1000; ++s) {
      const Point a = random_point(p.set(), rng);
      const Point b = random_point(p.set(), rng);
      const double lambda = rng.uniform();
      const DualVector z = p.sample(rng);
      const double lhs = p.loss(lambda * a + (1 - lambda) * b, z);
      CHECK(lhs <= lambda * p.loss(a, z) + (1 - lambda) * p.loss(b, z) + 1e-12);
    }
  }
}

TEST_CASE("random points are feasible") {
  CounterRng rng(2);
  for (const FeasibleSet& set : {FeasibleSet::simplex(7), FeasibleSet::box(3, -2, 0.5),
                                 FeasibleSet::ball(Point::Constant(3, 1.0), 0.5)}) {
    for (int s = 0; s < 1000; ++s) CHECK(set.contains(random_point(set, rng)));
  }
}
