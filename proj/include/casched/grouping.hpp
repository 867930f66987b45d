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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "casched/channel.hpp"
#include "casched/utility.hpp"

namespace casched {

struct UserEquipment {
  int id = 0;
  double distance_m = 1.0;
  Utility utility = make_logarithmic(1.0, 1.0);
  double pf_weight = 1.0;

  friend bool operator==(const UserEquipment&, const UserEquipment&) = default;
};

void validate(const UserEquipment& ue);

/// A user left out of every group because no carrier reaches it.
struct CoverageWarning {
  int user_id = 0;
  std::string message;
};

/// Per-user in-range carrier sets and the per-carrier user groups they induce.
struct GroupAssignment {
  /// Carrier ids in scheduling order: ascending coverage radius, i.e.
  /// descending frequency, ties by id.
  std::vector<int> stage_order;
  std::map<int, std::vector<int>> alpha;   // user id -> in-range carrier ids
  std::map<int, std::vector<int>> groups;  // carrier id -> user ids, ascending
  std::vector<CoverageWarning> warnings;

  /// groups[stage_order[k]] is a subset of groups[stage_order[k + 1]].
  bool nested() const;
  /// i in groups[k] exactly when k in alpha[i].
  bool consistent() const;
};

/// Carrier ids sorted by descending frequency, ties by ascending id.
std::vector<int> stage_order(std::span<const Carrier> carriers);

/// Ids of carriers whose path loss at the user's distance is within the
/// threshold, in ascending id order.
std::vector<int> in_range_carriers(const UserEquipment& ue, std::span<const Carrier> carriers,
                                   const ChannelModel& model, double loss_threshold_db);

/// Groups users by coverage. Users reached by no carrier are dropped and
/// reported in `warnings`. Throws EmptyScenario when no user is covered,
/// InvalidParameter when either list is empty.
GroupAssignment build_groups(std::span<const UserEquipment> ues,
                             std::span<const Carrier> carriers, const ChannelModel& model,
                             double loss_threshold_db);

}  // namespace casched
