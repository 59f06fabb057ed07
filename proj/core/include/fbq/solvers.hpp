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

#ifndef FBQ_SOLVERS_HPP_
#define FBQ_SOLVERS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "fbq/problem.hpp"

namespace fbq {

// Dynamic-programming tables. value[k][b] is the best weighted sum-rate
// using the first k+1 users and at most b bits; choice[k][b] records the
// maximizing bit count of user k (smallest on ties). op_count counts
// inner-max evaluations: L(B+1)(B+2)/2.
struct DpTrace {
  std::vector<std::vector<double>> value;
  std::vector<std::vector<int>> choice;
  std::uint64_t op_count = 0;
};

struct DpResult {
  Allocation allocation;
  DpTrace trace;
};

// Exact optimum by knapsack-style recursion, O(L B^2).
DpResult dp_solve(const AllocationProblem& problem);

// Exhaustive enumeration of all allocations with sum <= budget. Test
// oracle only; throws InstanceTooLargeError when C(B+L-1, L-1) > 1e7.
Allocation brute_force_solve(const AllocationProblem& problem);

struct GreedyResult {
  Allocation allocation;
  std::uint64_t extractions = 0;  // heap pops, <= budget
  // True when the table is tagged monotone and submodular, i.e. the
  // (1 - 1/e) factor applies.
  bool guaranteed = false;
};

// One bit at a time to the largest current marginal utility
// u_k = w_k (A[k][b_k+1] - A[k][b_k]); lowest-index tie-breaking; stops
// early once every marginal utility is <= 0.
GreedyResult greedy_solve(const AllocationProblem& problem);

// Water-filling solution of
//   min sum_k weights[k] * loss_coeffs[k] * 2^{-b_k},  sum b_k <= B, b >= 0.
// For the 2x1 MISO objective the loss coefficient is beta2 - beta1.
// thresholds theta_k = weights[k] * loss_coeffs[k] * ln 2; active users
// satisfy theta_k 2^{-b_k} = eta. Throws DegenerateProblemError when all
// thresholds are zero.
FractionalAllocation relaxation_solve(std::span<const double> loss_coeffs,
                                      std::span<const double> weights,
                                      int budget);

// Composes relaxation_solve with the MISO loss coefficients
// beta2(snr) - beta1(snr).
FractionalAllocation relaxation_solve_miso(std::span<const double> snrs,
                                           std::span<const double> weights,
                                           int budget);

// Floor with the sub-1 zeroing rule: floor(b) if b >= 1, else 0.
std::vector<int> round_allocation(const FractionalAllocation& frac);

// Floors and recomputes the objective on the problem's table.
Allocation round_allocation(const FractionalAllocation& frac,
                            const AllocationProblem& problem);

// min{ 1/2, 1 / (max_k beta2/beta1 / 2 + 1) } over the given linear SNRs.
double approximation_factor_bound(std::span<const double> snrs);

}  // namespace fbq

#endif  // FBQ_SOLVERS_HPP_
