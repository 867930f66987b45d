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

#include "casched/matrix.hpp"

namespace casched::kernels {

/// Per-user factor of a scheduling metric that is separable as
/// `priority * H_ij`. When `priority` is +infinity (a user with zero utility
/// or zero average rate) users are ranked by `tiebreak * H_ij` instead.
struct UserPriority {
  double priority = 0.0;
  double tiebreak = 0.0;
};

/// Reference implementation: for each RB column j, writes the row index
/// maximizing the metric into winners[j]. Infinite-priority users beat
/// finite ones; H_ij = 0 scores 0; remaining ties go to the lowest row.
void argmax_serial(std::span<const UserPriority> users, const Matrix& rates,
                   std::span<int> winners);

/// Same result as argmax_serial, RB columns split across OpenMP threads.
void argmax_parallel(std::span<const UserPriority> users, const Matrix& rates,
                     std::span<int> winners);

/// Running-average share update for one frame: every entry scaled by (n - 1) / n and
/// the winner of each column credited 1 / n.
void update_shares_serial(Matrix& phi, std::span<const int> winners, long frame_index);
void update_shares_parallel(Matrix& phi, std::span<const int> winners, long frame_index);

}  // namespace casched::kernels
