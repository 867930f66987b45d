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

#include <span>
#include <vector>

#include "casched/matrix.hpp"
#include "casched/utility.hpp"

namespace casched {

/// Data of one carrier's scheduling problem: maximize
///   sum_i ln U_i(carried_i + sum_j phi_ij H_ij)
/// over share matrices whose RB columns lie on the probability simplex.
struct StageProblem {
  Matrix rate_table;  // H [user x rb], >= 0
  std::vector<Utility> utilities;
  std::vector<double> carried;

  std::size_t n_users() const noexcept { return rate_table.rows(); }
  std::size_t n_rbs() const noexcept { return rate_table.cols(); }
};

/// Throws InvalidParameter on shape mismatch, negative rates or carried rates,
/// or an empty user set.
void validate(const StageProblem& problem);

/// Per-user stage rate sum_j phi_ij H_ij.
std::vector<double> stage_rates(const Matrix& phi, const Matrix& rate_table);

/// True when every column of `phi` is nonnegative and sums to 1 within `tol`.
bool column_stochastic(const Matrix& phi, double tol = 1e-9);

}  // namespace casched
