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

#ifndef FBQ_PROBLEM_HPP_
#define FBQ_PROBLEM_HPP_

#include <cstddef>
#include <vector>

#include "fbq/errors.hpp"

namespace fbq {

// Dense table of unweighted expected rates: entries[i][j] is the expected
// rate of user i when it is granted j feedback bits, j = 0..budget.
// Weights are applied by the solvers, so one table can serve many queue
// states.
struct RateTable {
  std::vector<std::vector<double>> entries;
  bool monotone = false;
  bool submodular = false;

  std::size_t num_users() const { return entries.size(); }
  int budget() const {
    return entries.empty() ? 0 : static_cast<int>(entries.front().size()) - 1;
  }
};

// Every row non-decreasing in the bit count (1e-12 slack for ties).
bool check_monotone(const RateTable& table);

// Every row has non-increasing forward differences: one extra bit never
// helps more than the previous extra bit did.
bool check_submodular(const RateTable& table);

// Budgeted allocation instance over L flat (virtual) users.
struct AllocationProblem {
  std::size_t num_users = 0;
  int budget = 0;
  std::vector<double> weights;  // queue lengths or scheduler weights, >= 0
  RateTable rate_table;         // num_users x (budget + 1)

  // Throws InfeasibleAllocationError on shape or sign violations.
  void validate() const;
};

// Integer bit allocation together with its weighted sum-rate.
struct Allocation {
  std::vector<int> bits;
  double objective_value = 0.0;
};

// Real-valued water-filling solution with its KKT multiplier.
struct FractionalAllocation {
  std::vector<double> bits;
  double eta = 0.0;
};

// Slow-scheduler output: per physical user, the set of sub-band indices it
// owns (0-based, pairwise disjoint), plus its queue length.
struct Assignment {
  std::vector<std::vector<int>> bands;
  std::vector<double> queue_lengths;
};

// One virtual user per assigned sub-band. Weight and SNR are replicated
// from the owning physical user; back_map[k] lists the virtual indices of
// physical user k so per-user rates can be summed back.
struct VirtualProblem {
  std::vector<double> weights;
  std::vector<double> snr;
  std::vector<int> band;  // source sub-band of each virtual user
  std::vector<std::vector<int>> back_map;

  std::size_t num_users() const { return weights.size(); }
};

// Flattens (user, sub-band) pairs into the virtual-user form the solvers
// work on. per_band_snr[j] is the linear average SNR on sub-band j.
// Throws InvalidAssignmentError if two users share a band.
VirtualProblem virtualize(const Assignment& assignment,
                          const std::vector<double>& per_band_snr);

// Sum_k weights[k] * entries[k][bits[k]]. Throws InfeasibleAllocationError
// if the allocation violates the budget.
double weighted_sum_rate(const AllocationProblem& problem,
                         const Allocation& alloc);

// Convenience: wrap a bit vector into an Allocation with its objective
// recomputed from the problem.
Allocation evaluate_allocation(const AllocationProblem& problem,
                               std::vector<int> bits);

}  // namespace fbq

#endif  // FBQ_PROBLEM_HPP_
