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

#include "casched/grouping.hpp"

#include <algorithm>

#include "casched/error.hpp"

namespace casched {

void validate(const UserEquipment& ue) {
  const std::string where = "user " + std::to_string(ue.id) + ": ";
  if (!(ue.distance_m > 0.0)) throw InvalidParameter(where + "distance_m must be > 0");
  if (!(ue.pf_weight > 0.0)) throw InvalidParameter(where + "pf_weight must be > 0");
}

bool GroupAssignment::nested() const {
  for (std::size_t k = 0; k + 1 < stage_order.size(); ++k) {
    const auto& inner = groups.at(stage_order[k]);
    const auto& outer = groups.at(stage_order[k + 1]);
    if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) return false;
  }
  return true;
}

bool GroupAssignment::consistent() const {
  for (const auto& [carrier, members] : groups) {
    for (int user : members) {
      auto it = alpha.find(user);
      if (it == alpha.end() || !std::ranges::binary_search(it->second, carrier)) return false;
    }
  }
  for (const auto& [user, carriers] : alpha) {
    for (int carrier : carriers) {
      auto it = groups.find(carrier);
      if (it == groups.end() || !std::ranges::binary_search(it->second, user)) return false;
    }
  }
  return true;
}

std::vector<int> stage_order(std::span<const Carrier> carriers) {
  std::vector<const Carrier*> sorted;
  for (const auto& c : carriers) sorted.push_back(&c);
  std::ranges::sort(sorted, [](const Carrier* x, const Carrier* y) {
    if (x->freq_hz != y->freq_hz) return x->freq_hz > y->freq_hz;
    return x->id < y->id;
  });
  std::vector<int> ids;
  for (const auto* c : sorted) ids.push_back(c->id);
  return ids;
}

std::vector<int> in_range_carriers(const UserEquipment& ue, std::span<const Carrier> carriers,
                                   const ChannelModel& model, double loss_threshold_db) {
  std::vector<int> ids;
  for (const auto& c : carriers) {
    if (pathloss_db(c.freq_hz, ue.distance_m, model) <= loss_threshold_db) ids.push_back(c.id);
  }
  std::ranges::sort(ids);
  return ids;
}

GroupAssignment build_groups(std::span<const UserEquipment> ues,
                             std::span<const Carrier> carriers, const ChannelModel& model,
                             double loss_threshold_db) {
  if (carriers.empty()) throw InvalidParameter("grouping needs at least one carrier");
  if (ues.empty()) throw EmptyScenario("grouping needs at least one user");

  GroupAssignment out;
  out.stage_order = stage_order(carriers);
  for (const auto& c : carriers) out.groups[c.id];

  for (const auto& ue : ues) {
    auto in_range = in_range_carriers(ue, carriers, model, loss_threshold_db);
    if (in_range.empty()) {
      out.warnings.push_back({ue.id, "user " + std::to_string(ue.id) + " at " +
                                         std::to_string(ue.distance_m) +
                                         " m is outside every carrier's coverage"});
      continue;
    }
    for (int k : in_range) out.groups[k].push_back(ue.id);
    out.alpha[ue.id] = std::move(in_range);
  }
  if (out.alpha.empty()) throw EmptyScenario("no user is inside any carrier's coverage");
  for (auto& [_, members] : out.groups) std::ranges::sort(members);
  return out;
}

}  // namespace casched
