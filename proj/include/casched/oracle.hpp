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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "casched/matrix.hpp"
#include "casched/problem.hpp"

namespace casched::oracle {

/// Shares above this count as "actively scheduled" in the KKT residual.
inline constexpr double kActiveShare = 1e-6;

/// L(phi) = sum_i ln U_i(c_i + sum_j phi_ij H_ij); -infinity when some
/// user's utility is zero. Throws ContractViolation unless `phi` is
/// column-stochastic within 1e-9.
double objective_L(const Matrix& phi, const StageProblem& problem);

/// dL/dphi_ij = H_ij U_i'(x_i) / U_i(x_i). Entries are +infinity for users
/// with zero utility and positive H.
Matrix gradient(const Matrix& phi, const StageProblem& problem);

/// Largest gap, over RBs and actively scheduled users, between a user's
/// marginal metric and the best metric on that RB. Zero exactly when every
/// active user attains the per-RB maximum.
double kkt_residual(const Matrix& phi, const StageProblem& problem,
                    double active_share = kActiveShare);

/// In-place Euclidean projection of `v` onto the probability simplex.
void project_simplex(std::span<double> v);

struct SolveOptions {
  std::size_t max_iterations = 200000;
};

struct Solution {
  Matrix phi;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  /// Users that can never reach positive utility (all-zero H row and no
  /// carried rate). Their rows stay zero and they are left out of the
  /// objective.
  std::vector<std::size_t> excluded_users;
  std::vector<std::string> warnings;
};

/// Projected gradient ascent on L over the product of per-RB simplices,
/// started from the uniform interior point, with Armijo backtracking.
/// Stops once kkt_residual <= tol. Throws ConvergenceFailure (carrying the
/// best iterate) when the iteration cap is hit first.
Solution solve_stage_optimum(const StageProblem& problem, double tol,
                             const SolveOptions& options = {});

}  // namespace casched::oracle
