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

#include "casched/kernels.hpp"

#include <cmath>

namespace casched::kernels {
namespace {

struct Score {
  bool infinite = false;
  double value = 0.0;
};

inline Score score(const UserPriority& u, double h) {
  if (h == 0.0) return {};
  if (std::isinf(u.priority)) return {true, u.tiebreak * h};
  return {false, u.priority * h};
}

inline bool better(const Score& a, const Score& b) {
  if (a.infinite != b.infinite) return a.infinite;
  return a.value > b.value;
}

inline int column_winner(std::span<const UserPriority> users, const Matrix& rates,
                         std::size_t j) {
  int winner = 0;
  Score best = score(users[0], rates(0, j));
  for (std::size_t i = 1; i < users.size(); ++i) {
    const Score s = score(users[i], rates(i, j));
    if (better(s, best)) {
      best = s;
      winner = static_cast<int>(i);
    }
  }
  return winner;
}

}  // namespace

void argmax_serial(std::span<const UserPriority> users, const Matrix& rates,
                   std::span<int> winners) {
  for (std::size_t j = 0; j < rates.cols(); ++j) winners[j] = column_winner(users, rates, j);
}

void argmax_parallel(std::span<const UserPriority> users, const Matrix& rates,
                     std::span<int> winners) {
  const auto cols = static_cast<long>(rates.cols());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < cols; ++j) {
    winners[j] = column_winner(users, rates, static_cast<std::size_t>(j));
  }
}

void update_shares_serial(Matrix& phi, std::span<const int> winners, long frame_index) {
  const double keep = static_cast<double>(frame_index - 1) / static_cast<double>(frame_index);
  const double credit = 1.0 / static_cast<double>(frame_index);
  for (double& v : phi.data()) v *= keep;
  for (std::size_t j = 0; j < winners.size(); ++j) {
    phi(static_cast<std::size_t>(winners[j]), j) += credit;
  }
}

void update_shares_parallel(Matrix& phi, std::span<const int> winners, long frame_index) {
  const double keep = static_cast<double>(frame_index - 1) / static_cast<double>(frame_index);
  const double credit = 1.0 / static_cast<double>(frame_index);
  const auto rows = static_cast<long>(phi.rows());
  const std::size_t cols = phi.cols();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) {
    auto row = phi.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = row[j] * keep + (winners[j] == i ? credit : 0.0);
    }
  }
}

}  // namespace casched::kernels
