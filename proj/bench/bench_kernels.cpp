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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "casched/kernels.hpp"

using namespace casched;

namespace {

struct Fixture {
  Matrix rates;
  std::vector<kernels::UserPriority> users;
  std::vector<int> winners;

  Fixture(std::size_t n, std::size_t m) : rates(n, m), users(n), winners(m) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.1, 10.0);
    for (double& h : rates.data()) h = unit(rng);
    for (auto& u : users) u = {unit(rng), unit(rng)};
  }
};

template <void (*Kernel)(std::span<const kernels::UserPriority>, const Matrix&, std::span<int>)>
void argmax(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Kernel(f.users, f.rates, f.winners);
    benchmark::DoNotOptimize(f.winners.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <void (*Kernel)(Matrix&, std::span<const int>, long)>
void update(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  Matrix phi(f.rates.rows(), f.rates.cols(), 1.0 / static_cast<double>(f.rates.rows()));
  for (std::size_t j = 0; j < f.winners.size(); ++j) f.winners[j] = static_cast<int>(j % phi.rows());
  long frame = 2;
  for (auto _ : state) {
    Kernel(phi, f.winners, frame++);
    benchmark::DoNotOptimize(phi.data().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({8, 100})->Args({64, 1000})->Args({256, 4096});
}

}  // namespace

BENCHMARK(argmax<kernels::argmax_serial>)->Name("argmax/serial")->Apply(shapes);
BENCHMARK(argmax<kernels::argmax_parallel>)->Name("argmax/parallel")->Apply(shapes);
BENCHMARK(update<kernels::update_shares_serial>)->Name("update/serial")->Apply(shapes);
BENCHMARK(update<kernels::update_shares_parallel>)->Name("update/parallel")->Apply(shapes);

BENCHMARK_MAIN();
