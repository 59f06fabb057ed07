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

#ifndef FBQ_QUEUE_SIM_HPP_
#define FBQ_QUEUE_SIM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fbq/problem.hpp"
#include "fbq/rate_models.hpp"

namespace fbq {

enum class Policy {
  kMaxWeightDp,
  kMaxWeightGreedy,
  kMaxWeightRelaxation,
  kEqualStatic,
  kPerfectFeedback,
};

const char* policy_name(Policy policy);
Policy parse_policy(const std::string& name);  // throws ConfigError

struct SimConfig {
  int num_users = 4;
  int num_bands = 8;
  int budget = 12;
  int period = 10;      // slow time-scale T, slots
  int horizon = 10000;  // fast slots, multiple of period
  std::vector<std::vector<int>> assignment;  // per user, 0-based band ids
  std::vector<double> snr_db;                // per user
  std::vector<double> arrival_rate;          // bits/slot per user
  Policy policy = Policy::kMaxWeightGreedy;
  std::uint64_t seed = 0;

  // Throws ConfigError on inconsistent shapes or overlapping bands.
  void validate() const;

  // K=4, L=8, user i on bands {2i, 2i+1}: the standard experiment layout.
  static SimConfig paired_bands(int num_users, std::vector<double> snr_db);
};

struct SimResult {
  std::vector<int> sample_slots;                   // every `period` slots
  std::vector<std::vector<double>> queue_samples;  // per sample, per user
  std::vector<std::vector<double>> service_samples;
  std::vector<std::vector<int>> allocation_history;  // per slow slot, per band
  std::vector<double> mean_service;                  // per user, bits/slot
  double mean_queue = 0.0;  // over samples and users
  double overhead_bits_per_slot = 0.0;
};

// Slotted-time downlink simulation. Every `period` slots the configured
// policy splits the bit budget across the virtual users (bands); each fast
// slot draws i.i.d. CN(0, I2) channels per band, serves through the
// selected RVQ codebook (or exactly, for perfect feedback) and applies
// q <- max(q + lambda - service, 0). Channel draws depend only on the seed,
// never on the policy, so runs with equal seeds are paired.
SimResult run(const SimConfig& config, const SuperCodebook& codebook);

// Time-invariant baseline: floor(B/K) bits per user (remainder to the
// lowest indices), split across each user's bands with the larger share on
// the earlier band. Returns per-band bits.
std::vector<int> equal_static_allocation(const SimConfig& config);

// Signalling cost of announcing one allocation per slow slot:
// log2 C(B+L-1, L-1) / T.
double overhead_estimate(int budget, int num_bands, int period);

struct SweepResult {
  std::vector<double> lambdas;
  std::vector<bool> stable;
  std::vector<double> final_slopes;  // bits/slot, per lambda
  double knee = 0.0;                 // largest stable lambda, 0 if none
};

// Runs `run` per lambda (symmetric arrivals), declares a point stable when
// the least-squares slope of the mean queue length over the final half of
// the samples is below eps_slope. max_threads > 1 fans lambda points over
// worker threads; output is identical either way.
SweepResult stability_sweep(const SimConfig& config,
                            const std::vector<double>& lambda_grid,
                            const SuperCodebook& codebook,
                            double eps_slope = 1e-3, int max_threads = 1);

}  // namespace fbq

#endif  // FBQ_QUEUE_SIM_HPP_
