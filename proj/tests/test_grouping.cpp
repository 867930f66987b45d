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

#include <random>

#include "casched/error.hpp"
#include "casched/grouping.hpp"

using namespace casched;

namespace {

const ChannelModel kModel{};  // d0 = 1 m, n = 3.76
constexpr double kThreshold = 120.0;

std::vector<Carrier> two_carriers() {
  return {Carrier{1, 2.6e9, 10.0, 10, 1.0, 1.0}, Carrier{2, 0.8e9, 20.0, 20, 1.0, 1.0}};
}

UserEquipment user(int id, double distance) {
  return UserEquipment{id, distance, make_logarithmic(1.0, 100.0), 1.0};
}

}  // namespace

TEST_CASE("in-range carriers by distance band") {
  const auto carriers = two_carriers();
  const double r1 = coverage_radius(2.6e9, kThreshold, kModel);
  const double r2 = coverage_radius(0.8e9, kThreshold, kModel);
  REQUIRE(r1 < r2);
  CHECK(in_range_carriers(user(1, 0.5 * r1), carriers, kModel, kThreshold) ==
        std::vector<int>{1, 2});
  CHECK(in_range_carriers(user(1, 0.5 * (r1 + r2)), carriers, kModel, kThreshold) ==
        std::vector<int>{2});
  CHECK(in_range_carriers(user(1, 1.01 * r2), carriers, kModel, kThreshold).empty());
}

TEST_CASE("groups for the eight-user two-carrier layout") {
  std::vector<UserEquipment> ues;
  for (int i = 1; i <= 8; ++i) ues.push_back(user(i, i <= 4 ? 30.0 + 20.0 * i : 50.0 + 20.0 * i));
  const auto g = build_groups(ues, two_carriers(), kModel, kThreshold);
  CHECK(g.stage_order == std::vector<int>{1, 2});
  CHECK(g.groups.at(1) == std::vector<int>{1, 2, 3, 4});
  CHECK(g.groups.at(2) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(g.nested());
  CHECK(g.consistent());
  CHECK(g.warnings.empty());
}

TEST_CASE("single carrier and all-near users") {
  std::vector<UserEquipment> ues{user(3, 10.0), user(1, 20.0), user(2, 30.0)};
  const std::vector<Carrier> one{Carrier{7, 1e9, 1.0, 4, 1.0, 1.0}};
  const auto g = build_groups(ues, one, kModel, kThreshold);
  CHECK(g.groups.at(7) == std::vector<int>{1, 2, 3});

  const auto h = build_groups(ues, two_carriers(), kModel, kThreshold);
  CHECK(h.groups.at(1) == h.groups.at(2));
}

TEST_CASE("stage order is descending frequency with id tie-break") {
  const std::vector<Carrier> cs{Carrier{5, 1e9, 1, 1, 1, 1}, Carrier{2, 3e9, 1, 1, 1, 1},
                                Carrier{9, 1e9, 1, 1, 1, 1}, Carrier{1, 1e9, 1, 1, 1, 1}};
  CHECK(stage_order(cs) == std::vector<int>{2, 1, 5, 9});
}

TEST_CASE("out-of-coverage users are reported, not fatal") {
  const double r2 = coverage_radius(0.8e9, kThreshold, kModel);
  std::vector<UserEquipment> ues{user(1, 10.0), user(2, 2.0 * r2)};
  const auto g = build_groups(ues, two_carriers(), kModel, kThreshold);
  REQUIRE(g.warnings.size() == 1);
  CHECK(g.warnings[0].user_id == 2);
  CHECK(!g.alpha.contains(2));
  CHECK(g.groups.at(2) == std::vector<int>{1});

  std::vector<UserEquipment> far{user(1, 2.0 * r2)};
  CHECK_THROWS_AS(build_groups(far, two_carriers(), kModel, kThreshold), EmptyScenario);
}

TEST_CASE("property: groups are nested and consistent in random layouts") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> nk(1, 5), nu(1, 30);
  std::uniform_real_distribution<double> freq(0.4e9, 6e9), dist(1.0, 800.0), thr(90.0, 140.0);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<Carrier> cs;
    const int k = nk(rng);
    for (int c = 0; c < k; ++c) cs.push_back(Carrier{c + 1, freq(rng), 1.0, 1, 1.0, 1.0});
    std::vector<UserEquipment> ues;
    const int n = nu(rng);
    for (int i = 0; i < n; ++i) ues.push_back(user(i + 1, dist(rng)));
    GroupAssignment g;
    try {
      g = build_groups(ues, cs, kModel, thr(rng));
    } catch (const EmptyScenario&) {
      continue;
    }
    REQUIRE(g.nested());
    REQUIRE(g.consistent());
    ++checked;
  }
  CHECK(checked > 250);
}
