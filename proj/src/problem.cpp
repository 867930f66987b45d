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

#include "casched/problem.hpp"

#include <cmath>
#include <string>

#include "casched/error.hpp"

namespace casched {

void validate(const StageProblem& p) {
  if (p.n_users() == 0) throw InvalidParameter("stage problem has no users");
  if (p.n_rbs() == 0) throw InvalidParameter("stage problem has no resource blocks");
  if (p.utilities.size() != p.n_users() || p.carried.size() != p.n_users()) {
    throw InvalidParameter("stage problem: utilities/carried size does not match rate table");
  }
  for (double h : p.rate_table.data()) {
    if (!(h >= 0.0) || !std::isfinite(h)) {
      throw InvalidParameter("stage problem: rate table entries must be finite and >= 0");
    }
  }
  for (double c : p.carried) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InvalidParameter("stage problem: carried rates must be finite and >= 0");
    }
  }
}

std::vector<double> stage_rates(const Matrix& phi, const Matrix& rate_table) {
  std::vector<double> rates(phi.rows(), 0.0);
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    const auto p = phi.row(i);
    const auto h = rate_table.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) sum += p[j] * h[j];
    rates[i] = sum;
  }
  return rates;
}

bool column_stochastic(const Matrix& phi, double tol) {
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
      const double v = phi(i, j);
      if (!(v >= -tol)) return false;
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= tol)) return false;
  }
  return true;
}

}  // namespace casched
