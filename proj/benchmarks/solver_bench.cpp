// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "fbq/solvers.hpp"

namespace {

fbq::AllocationProblem make_problem(int users, int budget) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  fbq::AllocationProblem p;
  p.num_users = users;
  p.budget = budget;
  for (int k = 0; k < users; ++k) {
    p.weights.push_back(unit(rng) + 0.05);
    std::vector<double> row{0.0};
    double inc = unit(rng) + 0.05;
    for (int j = 0; j < budget; ++j) {
      row.push_back(row.back() + inc);
      inc *= 0.5 + 0.5 * unit(rng);
    }
    p.rate_table.entries.push_back(std::move(row));
  }
  p.rate_table.monotone = true;
  p.rate_table.submodular = true;
  return p;
}

void BM_DpSolve(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbq::dp_solve(p));
  }
}

void BM_GreedySolve(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbq::greedy_solve(p));
  }
}

void BM_RelaxationSolve(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  const int budget = static_cast<int>(state.range(1));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> loss(users), weights(users);
  for (int k = 0; k < users; ++k) {
    loss[k] = std::pow(10.0, 2.0 * unit(rng) - 1.0);
    weights[k] = unit(rng) + 0.05;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbq::relaxation_solve(loss, weights, budget));
  }
}

}  // namespace

BENCHMARK(BM_DpSolve)->Args({4, 12})->Args({8, 12})->Args({50, 50})
    ->Args({50, 200});
BENCHMARK(BM_GreedySolve)->Args({4, 12})->Args({8, 12})->Args({50, 50})
    ->Args({50, 200});
BENCHMARK(BM_RelaxationSolve)->Args({8, 12})->Args({50, 200})
    ->Args({1000, 5000});

BENCHMARK_MAIN();
