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

#include "casched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include "casched/error.hpp"

namespace casched::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> utility_args(const Matrix& phi, const StageProblem& p) {
  auto x = stage_rates(phi, p.rate_table);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += p.carried[i];
  return x;
}

double sum_log_utility(std::span<const double> x, const StageProblem& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += p.utilities[i].log_value(x[i]);
  return total;
}

// Per-user ln U slope; zero-rate users get +inf.
std::vector<double> log_slopes(std::span<const double> x, const StageProblem& p) {
  std::vector<double> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = p.utilities[i].log_slope(x[i]);
  return s;
}

double metric(double log_slope, double h) { return h == 0.0 ? 0.0 : log_slope * h; }

double residual_from_slopes(const Matrix& phi, const StageProblem& p,
                            std::span<const double> slopes, double active_share) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.n_rbs(); ++j) {
    double best = -kInf;
    for (std::size_t i = 0; i < p.n_users(); ++i) {
      best = std::max(best, metric(slopes[i], p.rate_table(i, j)));
    }
    for (std::size_t i = 0; i < p.n_users(); ++i) {
      if (phi(i, j) <= active_share) continue;
      const double g = metric(slopes[i], p.rate_table(i, j));
      if (g == best) continue;  // covers best == +inf attained by this user
      worst = std::max(worst, best - g);
    }
  }
  return worst;
}

StageProblem subproblem(const StageProblem& p, std::span<const std::size_t> keep) {
  StageProblem sub;
  sub.rate_table = Matrix(keep.size(), p.n_rbs());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    std::ranges::copy(p.rate_table.row(keep[r]), sub.rate_table.row(r).begin());
    sub.utilities.push_back(p.utilities[keep[r]]);
    sub.carried.push_back(p.carried[keep[r]]);
  }
  return sub;
}

}  // namespace

double objective_L(const Matrix& phi, const StageProblem& problem) {
  if (phi.rows() != problem.n_users() || phi.cols() != problem.n_rbs()) {
    throw ContractViolation("share matrix shape does not match the stage problem");
  }
  if (!column_stochastic(phi, 1e-9)) {
    throw ContractViolation("share matrix columns must be nonnegative and sum to 1");
  }
  const auto x = utility_args(phi, problem);
  return sum_log_utility(x, problem);
}

Matrix gradient(const Matrix& phi, const StageProblem& problem) {
  const auto x = utility_args(phi, problem);
  const auto s = log_slopes(x, problem);
  Matrix g(problem.n_users(), problem.n_rbs());
  for (std::size_t i = 0; i < problem.n_users(); ++i) {
    for (std::size_t j = 0; j < problem.n_rbs(); ++j) {
      g(i, j) = metric(s[i], problem.rate_table(i, j));
    }
  }
  return g;
}

double kkt_residual(const Matrix& phi, const StageProblem& problem, double active_share) {
  const auto x = utility_args(phi, problem);
  const auto s = log_slopes(x, problem);
  return residual_from_slopes(phi, problem, s, active_share);
}

void project_simplex(std::span<double> v) {
  if (v.empty()) return;
  std::vector<double> u(v.begin(), v.end());
  std::ranges::sort(u, std::greater<>());
  double prefix = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    prefix += u[j];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  for (double& e : v) e = std::max(e - theta, 0.0);
}

Solution solve_stage_optimum(const StageProblem& problem, double tol,
                             const SolveOptions& options) {
  validate(problem);
  Solution out;

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < problem.n_users(); ++i) {
    const auto row = problem.rate_table.row(i);
    const bool has_rate = std::ranges::any_of(row, [](double h) { return h > 0.0; });
    if (has_rate || problem.carried[i] > 0.0) {
      keep.push_back(i);
    } else {
      out.excluded_users.push_back(i);
      out.warnings.push_back("user row " + std::to_string(i) +
                             " has no rate on any RB and no carried rate; excluded");
    }
  }
  if (keep.empty()) throw InvalidParameter("no user can reach positive utility");

  const StageProblem sub = subproblem(problem, keep);
  const std::size_t n = sub.n_users();
  const std::size_t m = sub.n_rbs();

  Matrix phi(n, m, 1.0 / static_cast<double>(n));
  auto x = utility_args(phi, sub);
  double value = sum_log_utility(x, sub);
  auto slopes = log_slopes(x, sub);
  double residual = residual_from_slopes(phi, sub, slopes, kActiveShare);

  Matrix best_phi = phi;
  double best_residual = residual;
  double best_value = value;

  auto finish = [&](const Matrix& sol, double obj, double res, std::size_t iters) {
    out.phi = Matrix(problem.n_users(), m, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      std::ranges::copy(sol.row(r), out.phi.row(keep[r]).begin());
    }
    out.objective = obj;
    out.residual = res;
    out.iterations = iters;
  };

  // Spectral projected gradient: a Barzilai-Borwein trial step projected
  // onto the column simplices gives a feasible direction, and an exact line
  // search along it uses the sign of the directional derivative. L is
  // concave along the segment, so the derivative decides every comparison
  // without differencing objective values.
  constexpr double kMinStep = 1e-12;
  constexpr double kMaxStep = 1e12;

  Matrix grad(n, m);
  auto fill_gradient = [&](const std::vector<double>& s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) grad(i, j) = metric(s[i], sub.rate_table(i, j));
    }
  };
  fill_gradient(slopes);

  Matrix direction(n, m);
  Matrix trial(n, m);
  std::vector<double> column(n);

  // Directional derivative of L at `at` along `direction`. Gradients are
  // taken relative to each column maximum; a direction column sums to zero,
  // so the shift leaves the value unchanged and avoids cancellation.
  auto derivative = [&](const std::vector<double>& s) {
    if (std::ranges::any_of(s, [](double v) { return std::isinf(v); })) return -kInf;
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double top = -kInf;
      for (std::size_t i = 0; i < n; ++i) top = std::max(top, metric(s[i], sub.rate_table(i, j)));
      for (std::size_t i = 0; i < n; ++i) {
        total += (metric(s[i], sub.rate_table(i, j)) - top) * direction(i, j);
      }
    }
    return total;
  };
  auto move = [&](double lambda) {
    for (std::size_t k = 0; k < phi.data().size(); ++k) {
      trial.data()[k] = phi.data()[k] + lambda * direction.data()[k];
    }
    return utility_args(trial, sub);
  };

  double spectral = 1.0;
  {
    // Scale the first step so it moves the shares by O(1).
    double gmax = 0.0;
    for (double g : grad.data()) {
      if (std::isfinite(g)) gmax = std::max(gmax, std::abs(g));
    }
    if (gmax > 0.0) spectral = std::clamp(1.0 / gmax, kMinStep, kMaxStep);
  }

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    if (residual <= tol) {
      finish(phi, value, residual, iter);
      return out;
    }

    double slope_along = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double top = -kInf;
      for (std::size_t i = 0; i < n; ++i) top = std::max(top, grad(i, j));
      for (std::size_t i = 0; i < n; ++i) {
        column[i] = phi(i, j) + spectral * (grad(i, j) - top);
      }
      project_simplex(column);
      for (std::size_t i = 0; i < n; ++i) {
        direction(i, j) = column[i] - phi(i, j);
        slope_along += (grad(i, j) - top) * direction(i, j);
      }
    }
    if (!(slope_along > 0.0)) break;  // no ascent direction left at this precision

    // Largest lambda in (0, 1] whose derivative is still non-negative,
    // located to a relative accuracy of 1e-3.
    double lambda = 1.0;
    auto trial_x = move(lambda);
    auto trial_slopes = log_slopes(trial_x, sub);
    if (!(derivative(trial_slopes) >= 0.0)) {
      double lo = 0.0;
      double hi = 1.0;
      while (hi - lo > 1e-3 * hi && hi > 1e-20) {
        const double mid = 0.5 * (lo + hi);
        trial_x = move(mid);
        trial_slopes = log_slopes(trial_x, sub);
        (derivative(trial_slopes) >= 0.0 ? lo : hi) = mid;
      }
      if (lo == 0.0) break;
      lambda = lo;
      trial_x = move(lambda);
      trial_slopes = log_slopes(trial_x, sub);
    }

    // s = step taken, y = change in gradient; concavity gives <s, y> <= 0.
    Matrix old_grad = grad;
    std::swap(phi, trial);
    x = std::move(trial_x);
    slopes = std::move(trial_slopes);
    value = sum_log_utility(x, sub);
    fill_gradient(slopes);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k < phi.data().size(); ++k) {
      const double d = phi.data()[k] - trial.data()[k];
      ss += d * d;
      sy += d * (grad.data()[k] - old_grad.data()[k]);
    }
    if (sy < 0.0) spectral = std::clamp(ss / -sy, kMinStep, kMaxStep);

    residual = residual_from_slopes(phi, sub, slopes, kActiveShare);
    if (residual < best_residual) {
      best_residual = residual;
      best_phi = phi;
      best_value = value;
    }
  }

  finish(best_phi, best_value, best_residual, options.max_iterations);
  char msg[128];
  std::snprintf(msg, sizeof msg, "projected gradient stopped with KKT residual %.3g above %.3g",
                best_residual, tol);
  throw ConvergenceFailure(msg,
                           std::vector<double>(out.phi.data().begin(), out.phi.data().end()),
                           best_value, best_residual);
}

}  // namespace casched::oracle
