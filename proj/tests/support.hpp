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

// Test-only helpers: random stage problems and a derivative-free grid search
// over products of simplices. The grid search never touches the solver or
// its gradients.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "casched/problem.hpp"
#include "casched/utility.hpp"

namespace casched::testing {

inline Utility random_utility(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < 0.5) return make_sigmoidal(0.2 + 1.8 * unit(rng), 1.0 + 19.0 * unit(rng));
  return make_logarithmic(0.5 + 14.5 * unit(rng), 100.0);
}

/// H in [1, 10], half the users carrying a rate in [0, 10].
inline StageProblem random_problem(std::mt19937_64& rng, std::size_t users, std::size_t rbs) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StageProblem p;
  p.rate_table = Matrix(users, rbs);
  for (double& h : p.rate_table.data()) h = 1.0 + 9.0 * unit(rng);
  for (std::size_t i = 0; i < users; ++i) {
    p.utilities.push_back(random_utility(rng));
    p.carried.push_back(unit(rng) < 0.5 ? 10.0 * unit(rng) : 0.0);
  }
  return p;
}

/// L(phi) straight from the definition.
inline double direct_objective(const Matrix& phi, const StageProblem& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.n_users(); ++i) {
    double x = p.carried[i];
    for (std::size_t j = 0; j < p.n_rbs(); ++j) x += phi(i, j) * p.rate_table(i, j);
    total += p.utilities[i].log_value(x);
  }
  return total;
}

struct GridResult {
  Matrix phi;
  double objective = -std::numeric_limits<double>::infinity();
};

namespace detail {

// All compositions of `total` into `parts` nonnegative integers within
// `radius` of `center` (coordinate-wise).
inline void compositions(int parts, int total, const std::vector<int>& center, int radius,
                         std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int k = static_cast<int>(cur.size());
  if (k == parts - 1) {
    if (std::abs(total - center[k]) <= radius) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  const int lo = std::max(0, center[k] - radius);
  const int hi = std::min(total, center[k] + radius);
  for (int v = lo; v <= hi; ++v) {
    cur.push_back(v);
    compositions(parts, total - v, center, radius, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Coarse-to-fine lattice search ending at share resolution 1 / 1000. Each
/// level enumerates every lattice point of every RB simplex near the previous
/// level's best point and takes the best product point.
inline GridResult grid_search(const StageProblem& p) {
  const int users = static_cast<int>(p.n_users());
  const std::size_t rbs = p.n_rbs();
  const int levels[] = {20, 100, 500, 1000};

  std::vector<std::vector<int>> best_counts(rbs, std::vector<int>(users, 0));
  GridResult best;
  int prev = 0;
  for (int n : levels) {
    const int radius = prev == 0 ? n : n / prev + 1;
    std::vector<std::vector<std::vector<int>>> options(rbs);
    for (std::size_t j = 0; j < rbs; ++j) {
      std::vector<int> center(users);
      for (int i = 0; i < users; ++i) {
        center[i] = prev == 0 ? 0 : best_counts[j][i] * n / prev;
      }
      std::vector<int> cur;
      detail::compositions(users, n, prev == 0 ? std::vector<int>(users, 0) : center,
                           radius, cur, options[j]);
    }
    // Odometer over the product of per-RB option lists.
    std::vector<std::size_t> idx(rbs, 0);
    Matrix phi(p.n_users(), rbs);
    GridResult level_best;
    std::vector<std::vector<int>> level_counts = best_counts;
    while (true) {
      for (std::size_t j = 0; j < rbs; ++j) {
        for (int i = 0; i < users; ++i) phi(i, j) = options[j][idx[j]][i] / double(n);
      }
      const double v = direct_objective(phi, p);
      if (v > level_best.objective) {
        level_best = {phi, v};
        for (std::size_t j = 0; j < rbs; ++j) level_counts[j] = options[j][idx[j]];
      }
      std::size_t j = 0;
      while (j < rbs && ++idx[j] == options[j].size()) idx[j++] = 0;
      if (j == rbs) break;
    }
    if (level_best.objective >= best.objective) {
      best = level_best;
      best_counts = level_counts;
    }
    prev = n;
  }
  return best;
}

}  // namespace casched::testing
