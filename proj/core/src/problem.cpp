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

#include "fbq/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fbq {

namespace {
constexpr double kTieSlack = 1e-12;
}

bool check_monotone(const RateTable& table) {
  for (const auto& row : table.entries) {
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] < row[j - 1] - kTieSlack) return false;
    }
  }
  return true;
}

bool check_submodular(const RateTable& table) {
  for (const auto& row : table.entries) {
    for (std::size_t j = 2; j < row.size(); ++j) {
      const double prev = row[j - 1] - row[j - 2];
      const double next = row[j] - row[j - 1];
      if (next > prev + kTieSlack) return false;
    }
  }
  return true;
}

void AllocationProblem::validate() const {
  if (budget < 0) {
    throw InfeasibleAllocationError("negative bit budget");
  }
  if (weights.size() != num_users) {
    throw InfeasibleAllocationError("weights length != num_users");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw InfeasibleAllocationError("negative weight");
  }
  if (rate_table.entries.size() != num_users) {
    throw InfeasibleAllocationError("rate table row count != num_users");
  }
  for (const auto& row : rate_table.entries) {
    if (static_cast<int>(row.size()) != budget + 1) {
      throw InfeasibleAllocationError("rate table row length != budget + 1");
    }
    for (double r : row) {
      if (!std::isfinite(r) || r < 0.0) {
        throw InfeasibleAllocationError("rate entries must be finite and >= 0");
      }
    }
  }
}

VirtualProblem virtualize(const Assignment& assignment,
                          const std::vector<double>& per_band_snr) {
  if (assignment.queue_lengths.size() != assignment.bands.size()) {
    throw InvalidAssignmentError("queue length per physical user required");
  }
  std::vector<bool> taken(per_band_snr.size(), false);
  VirtualProblem out;
  out.back_map.resize(assignment.bands.size());
  for (std::size_t k = 0; k < assignment.bands.size(); ++k) {
    std::vector<int> bands = assignment.bands[k];
    std::sort(bands.begin(), bands.end());
    for (int band : bands) {
      if (band < 0 || static_cast<std::size_t>(band) >= per_band_snr.size()) {
        throw InvalidAssignmentError("band index " + std::to_string(band) +
                                     " out of range");
      }
      if (taken[band]) {
        throw InvalidAssignmentError("band " + std::to_string(band) +
                                     " assigned twice");
      }
      taken[band] = true;
      out.back_map[k].push_back(static_cast<int>(out.weights.size()));
      out.weights.push_back(assignment.queue_lengths[k]);
      out.snr.push_back(per_band_snr[band]);
      out.band.push_back(band);
    }
  }
  return out;
}

double weighted_sum_rate(const AllocationProblem& problem,
                         const Allocation& alloc) {
  if (alloc.bits.size() != problem.num_users) {
    throw InfeasibleAllocationError("allocation length != num_users");
  }
  long total = 0;
  for (int b : alloc.bits) {
    if (b < 0 || b > problem.budget) {
      throw InfeasibleAllocationError("per-user bits outside [0, budget]");
    }
    total += b;
  }
  if (total > problem.budget) {
    throw InfeasibleAllocationError("allocation exceeds total budget");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < problem.num_users; ++k) {
    sum += problem.weights[k] * problem.rate_table.entries[k][alloc.bits[k]];
  }
  return sum;
}

Allocation evaluate_allocation(const AllocationProblem& problem,
                               std::vector<int> bits) {
  Allocation alloc;
  alloc.bits = std::move(bits);
  alloc.objective_value = weighted_sum_rate(problem, alloc);
  return alloc;
}

}  // namespace fbq
