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

#include "fbq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include "fbq/rate_models.hpp"

namespace fbq {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// C(n, k) capped at `cap` to avoid overflow in the enumeration guard.
double binomial_capped(int n, int k, double cap) {
  k = std::min(k, n - k);
  if (k < 0) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) {
    v *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (v > cap) return cap + 1.0;
  }
  return v;
}

}  // namespace

DpResult dp_solve(const AllocationProblem& problem) {
  problem.validate();
  const int num_users = static_cast<int>(problem.num_users);
  const int budget = problem.budget;
  const auto& table = problem.rate_table.entries;

  DpResult result;
  auto& trace = result.trace;
  trace.value.assign(num_users, std::vector<double>(budget + 1, 0.0));
  trace.choice.assign(num_users, std::vector<int>(budget + 1, 0));
  trace.op_count = 0;

  // Recursion from a virtual zero row: value[k][b] is the best weighted
  // sum-rate for users 0..k with at most b bits.
  for (int k = 0; k < num_users; ++k) {
    const double w = problem.weights[k];
    for (int b = 0; b <= budget; ++b) {
      double best = -1.0;
      int best_j = 0;
      for (int j = 0; j <= b; ++j) {
        const double prev = (k == 0) ? 0.0 : trace.value[k - 1][b - j];
        const double cand = prev + w * table[k][j];
        ++trace.op_count;
        if (cand > best) {  // ties keep the smallest j
          best = cand;
          best_j = j;
        }
      }
      trace.value[k][b] = best;
      trace.choice[k][b] = best_j;
    }
  }

  std::vector<int> bits(num_users, 0);
  if (num_users > 0) {
    int b = budget;
    for (int k = num_users - 1; k >= 0; --k) {
      bits[k] = trace.choice[k][b];
      b -= bits[k];
    }
  }
  result.allocation = evaluate_allocation(problem, std::move(bits));
  return result;
}

Allocation brute_force_solve(const AllocationProblem& problem) {
  problem.validate();
  const int num_users = static_cast<int>(problem.num_users);
  const int budget = problem.budget;
  if (binomial_capped(budget + num_users - 1, num_users - 1, 1e7) > 1e7) {
    throw InstanceTooLargeError("enumeration guard C(B+L-1, L-1) > 1e7");
  }

  std::vector<int> bits(num_users, 0);
  std::vector<int> best_bits = bits;
  double best = -1.0;
  // Depth-first over all allocations with sum <= budget.
  std::function<void(int, int, double)> recurse = [&](int k, int left,
                                                      double value) {
    if (k == num_users) {
      if (value > best) {
        best = value;
        best_bits = bits;
      }
      return;
    }
    for (int j = 0; j <= left; ++j) {
      bits[k] = j;
      recurse(k + 1, left - j,
              value + problem.weights[k] * problem.rate_table.entries[k][j]);
    }
    bits[k] = 0;
  };
  recurse(0, budget, 0.0);
  return evaluate_allocation(problem, std::move(best_bits));
}

GreedyResult greedy_solve(const AllocationProblem& problem) {
  problem.validate();
  const int num_users = static_cast<int>(problem.num_users);
  const int budget = problem.budget;
  const auto& table = problem.rate_table.entries;

  GreedyResult result;
  result.guaranteed =
      problem.rate_table.monotone && problem.rate_table.submodular;
  std::vector<int> bits(num_users, 0);

  struct Entry {
    double utility;
    int user;
  };
  // Max-heap on utility; equal utilities go to the lowest user index.
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.utility != b.utility) return a.utility < b.utility;
    return a.user > b.user;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  auto utility = [&](int k) {
    return problem.weights[k] * (table[k][bits[k] + 1] - table[k][bits[k]]);
  };
  for (int k = 0; k < num_users && budget > 0; ++k) {
    heap.push({utility(k), k});
  }

  int granted = 0;
  while (granted < budget && !heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    ++result.extractions;
    if (top.utility <= 0.0) break;  // no positive marginal utility left
    const int k = top.user;
    ++bits[k];
    ++granted;
    if (bits[k] < budget) {
      heap.push({utility(k), k});  // only this user's utility changed
    }
  }

  result.allocation = evaluate_allocation(problem, std::move(bits));
  return result;
}

FractionalAllocation relaxation_solve(std::span<const double> loss_coeffs,
                                      std::span<const double> weights,
                                      int budget) {
  if (loss_coeffs.size() != weights.size()) {
    throw std::invalid_argument("loss_coeffs and weights length mismatch");
  }
  if (budget < 0) throw std::domain_error("negative budget");
  const std::size_t n = weights.size();
  std::vector<double> theta(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (loss_coeffs[k] < 0.0 || weights[k] < 0.0) {
      throw std::domain_error("coefficients and weights must be >= 0");
    }
    theta[k] = weights[k] * loss_coeffs[k] * kLn2;
  }
  const double theta_max = *std::max_element(theta.begin(), theta.end());
  if (!(theta_max > 0.0)) {
    throw DegenerateProblemError("all water-filling thresholds are zero");
  }

  FractionalAllocation out;
  out.bits.assign(n, 0.0);
  if (budget == 0) {
    out.eta = theta_max;
    return out;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return theta[a] > theta[b];
  });

  // Grow the active set from the largest threshold down; for a set of the
  // m largest thresholds, eta(m) = 2^((sum log2 theta - B)/m). The set is
  // grown while its smallest member still clears eta(m); past the right
  // boundary that member's bit share would go negative.
  double log_sum = 0.0;
  std::size_t positive = 0;
  while (positive < n && theta[order[positive]] > 0.0) ++positive;
  double eta = theta_max;
  std::size_t active = 0;
  for (std::size_t m = 1; m <= positive; ++m) {
    log_sum += std::log2(theta[order[m - 1]]);
    const double candidate =
        std::exp2((log_sum - static_cast<double>(budget)) /
                  static_cast<double>(m));
    if (theta[order[m - 1]] <= candidate) break;
    eta = candidate;
    active = m;
  }
  for (std::size_t i = 0; i < active; ++i) {
    out.bits[order[i]] = std::log2(theta[order[i]] / eta);
  }
  out.eta = eta;
  return out;
}

FractionalAllocation relaxation_solve_miso(std::span<const double> snrs,
                                           std::span<const double> weights,
                                           int budget) {
  std::vector<double> loss(snrs.size());
  for (std::size_t k = 0; k < snrs.size(); ++k) {
    loss[k] = beta2(snrs[k]) - beta1(snrs[k]);
  }
  return relaxation_solve(loss, weights, budget);
}

std::vector<int> round_allocation(const FractionalAllocation& frac) {
  std::vector<int> bits(frac.bits.size(), 0);
  for (std::size_t k = 0; k < frac.bits.size(); ++k) {
    if (frac.bits[k] >= 1.0) {
      bits[k] = static_cast<int>(std::floor(frac.bits[k]));
    }
  }
  return bits;
}

Allocation round_allocation(const FractionalAllocation& frac,
                            const AllocationProblem& problem) {
  return evaluate_allocation(problem, round_allocation(frac));
}

double approximation_factor_bound(std::span<const double> snrs) {
  double worst_ratio = 0.0;
  for (double snr : snrs) {
    worst_ratio = std::max(worst_ratio, beta2(snr) / beta1(snr));
  }
  return std::min(0.5, 1.0 / (0.5 * worst_ratio + 1.0));
}

}  // namespace fbq
