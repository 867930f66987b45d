/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The casched Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "casched/error.hpp"
#include "casched/oracle.hpp"
#include "support.hpp"

using namespace casched;
using casched::testing::direct_objective;
using casched::testing::grid_search;
using casched::testing::random_problem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StageProblem identical_pair(const Utility& u, double h) {
  StageProblem p;
  p.rate_table = Matrix(2, 1, h);
  p.utilities = {u, u};
  p.carried = {0.0, 0.0};
  return p;
}

Matrix column(std::initializer_list<double> shares) {
  Matrix m(shares.size(), 1);
  std::size_t i = 0;
  for (double s : shares) m(i++, 0) = s;
  return m;
}

Matrix random_interior(std::mt19937_64& rng, std::size_t users, std::size_t rbs) {
  std::uniform_real_distribution<double> w(0.1, 1.0);
  Matrix phi(users, rbs);
  for (std::size_t j = 0; j < rbs; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < users; ++i) sum += (phi(i, j) = w(rng));
    for (std::size_t i = 0; i < users; ++i) phi(i, j) /= sum;
  }
  return phi;
}

}  // namespace

TEST_CASE("objective_L") {
  StageProblem one;
  one.rate_table = Matrix(1, 1, 200.0);
  one.utilities = {make_logarithmic(1.0, 100.0)};
  one.carried = {0.0};
  CHECK(oracle::objective_L(Matrix(1, 1, 1.0), one) == 0.0);

  const auto pair = identical_pair(make_logarithmic(1.0, 100.0), 10.0);
  CHECK(oracle::objective_L(column({1.0, 0.0}), pair) == -kInf);
  CHECK(oracle::objective_L(column({0.5, 0.5}), pair) >
        oracle::objective_L(column({0.9, 0.1}), pair));
  CHECK(oracle::objective_L(column({0.5, 0.5}), pair) ==
        doctest::Approx(2.0 * std::log(std::log1p(5.0) / std::log1p(100.0))));

  CHECK_THROWS_AS(oracle::objective_L(column({0.5, 0.6}), pair), ContractViolation);
  CHECK_THROWS_AS(oracle::objective_L(column({1.1, -0.1}), pair), ContractViolation);
}

TEST_CASE("simplex projection") {
  std::vector<double> a{0.2, 0.3, 0.5};
  oracle::project_simplex(a);
  CHECK(a == std::vector<double>{0.2, 0.3, 0.5});

  std::vector<double> b{2.0, 0.0};
  oracle::project_simplex(b);
  CHECK(b == std::vector<double>{1.0, 0.0});

  std::vector<double> c{0.5, 0.5, -3.0};
  oracle::project_simplex(c);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[2] == 0.0);

  // Property: the projection is on the simplex and no random simplex point is
  // closer to the input.
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 2.0);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 6;
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    auto p = v;
    oracle::project_simplex(p);
    double sum = 0.0, dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(p[i] >= 0.0);
      sum += p[i];
      dist += (p[i] - v[i]) * (p[i] - v[i]);
    }
    REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (int s = 0; s < 50; ++s) {
      std::vector<double> q(n);
      double qs = 0.0;
      for (double& x : q) qs += (x = e(rng));
      double qd = 0.0;
      for (std::size_t i = 0; i < n; ++i) qd += (q[i] / qs - v[i]) * (q[i] / qs - v[i]);
      REQUIRE(qd >= dist - 1e-12);
    }
  }
}

TEST_CASE("property: analytic gradient matches central differences") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_problem(rng, 1 + t % 4, 1 + t % 3);
    const Matrix phi = random_interior(rng, p.n_users(), p.n_rbs());
    const Matrix g = oracle::gradient(phi, p);
    for (std::size_t i = 0; i < p.n_users(); ++i) {
      for (std::size_t j = 0; j < p.n_rbs(); ++j) {
        // Perturb one entry off the simplex; L is defined for any phi >= 0.
        const double h = 1e-6;
        Matrix up = phi, down = phi;
        up(i, j) += h;
        down(i, j) -= h;
        const double fd = (direct_objective(up, p) - direct_objective(down, p)) / (2.0 * h);
        REQUIRE(std::abs(fd - g(i, j)) <= 1e-5 * std::max(std::abs(g(i, j)), 1.0));
      }
    }
  }
}

TEST_CASE("kkt residual") {
  StageProblem one;
  one.rate_table = Matrix(1, 3, 2.0);
  one.utilities = {make_sigmoidal(1.0, 5.0)};
  one.carried = {1.0};
  CHECK(oracle::kkt_residual(Matrix(1, 3, 1.0), one) == 0.0);

  const auto pair = identical_pair(make_sigmoidal(1.0, 5.0), 4.0);
  CHECK(oracle::kkt_residual(column({0.5, 0.5}), pair) <= 1e-12);
  CHECK(oracle::kkt_residual(column({0.6, 0.4}), pair) > 1e-3);
}

TEST_CASE("solver: trivial and symmetric optima") {
  StageProblem one;
  one.rate_table = Matrix(1, 1, 3.0);
  one.utilities = {make_logarithmic(2.0, 100.0)};
  one.carried = {1.5};
  const auto s1 = oracle::solve_stage_optimum(one, 1e-10);
  CHECK(s1.phi(0, 0) == 1.0);
  CHECK(s1.objective == doctest::Approx(one.utilities[0].log_value(4.5)));

  const auto pair = identical_pair(make_sigmoidal(5.0, 10.0), 30.0);
  const auto s2 = oracle::solve_stage_optimum(pair, 1e-10);
  CHECK(s2.phi(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s2.phi(1, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s2.residual <= 1e-10);
}

TEST_CASE("solver: perturbing the optimum raises the residual and lowers L") {
  std::mt19937_64 rng(31);
  const auto p = random_problem(rng, 3, 2);
  const auto sol = oracle::solve_stage_optimum(p, 1e-10);
  Matrix moved = sol.phi;
  // Shift 0.1 of the largest share on RB 0 to another user.
  std::size_t top = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (moved(i, 0) > moved(top, 0)) top = i;
  }
  const std::size_t other = (top + 1) % 3;
  moved(top, 0) -= 0.1;
  moved(other, 0) += 0.1;
  CHECK(oracle::kkt_residual(moved, p) > 1e-4);
  CHECK(oracle::objective_L(moved, p) < sol.objective);
}

TEST_CASE("solver: KKT certificate on random small problems") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_problem(rng, 1 + t % 4, 1 + (t / 4) % 4);
    const auto sol = oracle::solve_stage_optimum(p, 1e-8);
    REQUIRE(column_stochastic(sol.phi, 1e-9));
    REQUIRE(oracle::kkt_residual(sol.phi, p) <= 1e-8);
  }
}

TEST_CASE("solver agrees with a derivative-free grid search") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 12; ++t) {
    const auto p = random_problem(rng, 2 + t % 2, 1 + (t / 2) % 2);
    const auto sol = oracle::solve_stage_optimum(p, 1e-8);
    const auto grid = grid_search(p);
    CHECK(grid.objective <= sol.objective + 1e-9);
    CHECK(sol.objective - grid.objective <= 1e-4);
  }
}

TEST_CASE("solver excludes users that can never be served") {
  StageProblem p;
  p.rate_table = Matrix(2, 2, 0.0);
  p.rate_table(0, 0) = p.rate_table(0, 1) = 5.0;
  p.utilities = {make_logarithmic(1.0, 100.0), make_logarithmic(1.0, 100.0)};
  p.carried = {0.0, 0.0};
  const auto sol = oracle::solve_stage_optimum(p, 1e-10);
  CHECK(sol.excluded_users == std::vector<std::size_t>{1});
  CHECK(sol.warnings.size() == 1);
  CHECK(sol.phi(0, 0) == 1.0);
  CHECK(sol.phi(1, 1) == 0.0);
  CHECK(sol.objective == doctest::Approx(p.utilities[0].log_value(10.0)));
}

TEST_CASE("solver reports non-convergence with its best iterate") {
  std::mt19937_64 rng(43);
  const auto p = random_problem(rng, 4, 4);
  oracle::SolveOptions opts;
  opts.max_iterations = 1;
  try {
    oracle::solve_stage_optimum(p, 1e-14, opts);
    FAIL("expected ConvergenceFailure");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.best_phi.size() == 16);
    CHECK(std::isfinite(e.best_objective));
    CHECK(e.best_residual > 1e-14);
  }
}
