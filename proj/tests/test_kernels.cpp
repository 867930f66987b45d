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

#include <limits>
#include <random>

#include "casched/kernels.hpp"

using namespace casched;
using kernels::UserPriority;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("argmax: infinite priority wins, ties go to the lowest row") {
  Matrix h(3, 4, 1.0);
  h(0, 3) = 0.0;
  std::vector<UserPriority> users{{2.0, 0.0}, {kInf, 0.5}, {kInf, 0.5}};
  std::vector<int> w(4);
  kernels::argmax_serial(users, h, w);
  CHECK(w == std::vector<int>{1, 1, 1, 1});

  users = {{2.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
  kernels::argmax_serial(users, h, w);
  CHECK(w == std::vector<int>{0, 0, 0, 1});  // H(0, 3) = 0 scores 0

  users = {{kInf, 1.0}, {kInf, 3.0}, {5.0, 0.0}};
  h(1, 2) = 0.0;
  kernels::argmax_serial(users, h, w);
  CHECK(w == std::vector<int>{1, 1, 0, 1});
}

TEST_CASE("property: parallel argmax and share update equal the serial reference") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 9;
    const std::size_t m = 1 + (t * 7) % 300;
    Matrix h(n, m);
    // Coarse values force plenty of exact ties.
    for (double& v : h.data()) v = unit(rng) < 0.1 ? 0.0 : coarse(rng) + 1.0;
    std::vector<UserPriority> users(n);
    for (auto& u : users) {
      u = {unit(rng) < 0.2 ? kInf : static_cast<double>(coarse(rng)), double(coarse(rng))};
    }
    std::vector<int> a(m), b(m);
    kernels::argmax_serial(users, h, a);
    kernels::argmax_parallel(users, h, b);
    REQUIRE(a == b);

    Matrix phi_a(n, m, 1.0 / static_cast<double>(n));
    Matrix phi_b = phi_a;
    const long frame = 2 + t;
    kernels::update_shares_serial(phi_a, a, frame);
    kernels::update_shares_parallel(phi_b, b, frame);
    REQUIRE(phi_a == phi_b);
  }
}
