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

#include "fbq/queue_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "fbq/solvers.hpp"
#include "seed_mix.hpp"

namespace fbq {

namespace {

std::complex<double> standard_complex_gaussian(std::mt19937_64& rng,
                                               std::normal_distribution<>& n) {
  return {n(rng) * M_SQRT1_2, n(rng) * M_SQRT1_2};
}

double least_squares_slope(const std::vector<int>& x,
                           const std::vector<double>& y, std::size_t begin) {
  const std::size_t n = x.size() - begin;
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = begin; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = begin; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

const char* policy_name(Policy policy) {
  switch (policy) {
    case Policy::kMaxWeightDp: return "maxweight-dp";
    case Policy::kMaxWeightGreedy: return "maxweight-greedy";
    case Policy::kMaxWeightRelaxation: return "maxweight-relaxation";
    case Policy::kEqualStatic: return "equal-static";
    case Policy::kPerfectFeedback: return "perfect-feedback";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  for (Policy p : {Policy::kMaxWeightDp, Policy::kMaxWeightGreedy,
                   Policy::kMaxWeightRelaxation, Policy::kEqualStatic,
                   Policy::kPerfectFeedback}) {
    if (name == policy_name(p)) return p;
  }
  throw ConfigError("unknown policy: " + name);
}

void SimConfig::validate() const {
  if (num_users <= 0 || num_bands <= 0) {
    throw ConfigError("need at least one user and one band");
  }
  if (budget < 0) throw ConfigError("negative bit budget");
  if (period <= 0) throw ConfigError("period must be positive");
  if (horizon <= 0 || horizon % period != 0) {
    throw ConfigError("horizon must be a positive multiple of the period");
  }
  if (static_cast<int>(assignment.size()) != num_users ||
      static_cast<int>(snr_db.size()) != num_users ||
      static_cast<int>(arrival_rate.size()) != num_users) {
    throw ConfigError("assignment/snr_db/arrival_rate must have one entry "
                      "per user");
  }
  std::vector<bool> taken(num_bands, false);
  for (const auto& bands : assignment) {
    for (int band : bands) {
      if (band < 0 || band >= num_bands) throw ConfigError("band out of range");
      if (taken[band]) throw ConfigError("band assigned twice");
      taken[band] = true;
    }
  }
  for (double rate : arrival_rate) {
    if (!(rate >= 0.0)) throw ConfigError("negative arrival rate");
  }
}

SimConfig SimConfig::paired_bands(int num_users, std::vector<double> snr_db) {
  SimConfig config;
  config.num_users = num_users;
  config.num_bands = 2 * num_users;
  config.snr_db = std::move(snr_db);
  config.arrival_rate.assign(num_users, 0.0);
  config.assignment.resize(num_users);
  for (int k = 0; k < num_users; ++k) {
    config.assignment[k] = {2 * k, 2 * k + 1};
  }
  return config;
}

std::vector<int> equal_static_allocation(const SimConfig& config) {
  config.validate();
  std::vector<int> per_band(config.num_bands, 0);
  const int share = config.budget / config.num_users;
  int remainder = config.budget % config.num_users;
  for (int k = 0; k < config.num_users; ++k) {
    int user_bits = share + (remainder > 0 ? 1 : 0);
    if (remainder > 0) --remainder;
    const auto& bands = config.assignment[k];
    if (bands.empty()) continue;
    const int n = static_cast<int>(bands.size());
    const int base = user_bits / n;
    int extra = user_bits % n;
    for (int i = 0; i < n; ++i) {
      per_band[bands[i]] = base + (extra > 0 ? 1 : 0);
      if (extra > 0) --extra;
    }
  }
  return per_band;
}

double overhead_estimate(int budget, int num_bands, int period) {
  // log2 C(B+L-1, L-1) / T, summed in logs to stay exact at scale.
  double log2_binom = 0.0;
  const int n = budget + num_bands - 1;
  const int k = std::min(num_bands - 1, n - (num_bands - 1));
  for (int i = 1; i <= k; ++i) {
    log2_binom += std::log2(static_cast<double>(n - k + i)) -
                  std::log2(static_cast<double>(i));
  }
  return log2_binom / static_cast<double>(period);
}

SimResult run(const SimConfig& config, const SuperCodebook& codebook) {
  config.validate();
  if (codebook.max_bits() < config.budget) {
    throw ConfigError("super-codebook does not cover the bit budget");
  }

  // Virtual-user reduction of the fixed schedule. Band owner and SNR never
  // change; only the replicated queue weights do.
  std::vector<double> per_band_snr(config.num_bands, 1.0);
  std::vector<int> band_owner(config.num_bands, -1);
  for (int k = 0; k < config.num_users; ++k) {
    for (int band : config.assignment[k]) {
      per_band_snr[band] = std::pow(10.0, config.snr_db[k] / 10.0);
      band_owner[band] = k;
    }
  }
  Assignment assignment{config.assignment,
                        std::vector<double>(config.num_users, 0.0)};
  const VirtualProblem virt = virtualize(assignment, per_band_snr);
  const int num_virtual = static_cast<int>(virt.num_users());

  // Planning model: analytic RVQ expected rates, one row per virtual user.
  ChannelProfile profile;
  profile.users.resize(num_virtual);
  for (int v = 0; v < num_virtual; ++v) {
    profile.users[v].kind = ChannelProfile::Kind::kMisoRvq;
    profile.users[v].snr_bar = virt.snr[v];
  }
  AllocationProblem plan;
  plan.num_users = num_virtual;
  plan.budget = config.budget;
  plan.weights.assign(num_virtual, 0.0);
  plan.rate_table = build_rate_table(profile, config.budget);
  std::vector<double> loss_coeffs(num_virtual);
  for (int v = 0; v < num_virtual; ++v) {
    const MisoModel model = MisoModel::from_snr(virt.snr[v]);
    loss_coeffs[v] = model.beta2 - model.beta1;
  }

  std::vector<int> static_bits;
  if (config.policy == Policy::kEqualStatic) {
    static_bits = equal_static_allocation(config);
  }

  SimResult result;
  result.overhead_bits_per_slot =
      overhead_estimate(config.budget, config.num_bands, config.period);
  result.mean_service.assign(config.num_users, 0.0);

  std::vector<double> queue(config.num_users, 0.0);
  std::vector<int> per_band_bits(config.num_bands, 0);
  std::vector<Channel> channel(config.num_bands);
  std::vector<double> service(config.num_users, 0.0);
  std::vector<double> period_service(config.num_users, 0.0);

  // Channel randomness depends only on the seed and the slot, never on the
  // policy, so equal-seed runs are paired across policies.
  std::mt19937_64 channel_rng(detail::mix_seed(config.seed, 0x6368u));
  std::normal_distribution<> normal;

  for (int t = 0; t < config.horizon; ++t) {
    if (t % config.period == 0) {
      switch (config.policy) {
        case Policy::kEqualStatic:
          per_band_bits = static_bits;
          break;
        case Policy::kPerfectFeedback:
          std::fill(per_band_bits.begin(), per_band_bits.end(), 0);
          break;
        default: {
          for (int v = 0; v < num_virtual; ++v) {
            plan.weights[v] = queue[band_owner[virt.band[v]]];
          }
          const bool all_idle =
              std::all_of(plan.weights.begin(), plan.weights.end(),
                          [](double w) { return w == 0.0; });
          std::vector<int> bits;
          if (all_idle) {
            bits.assign(num_virtual, 0);  // nothing to weigh, nothing to send
          } else if (config.policy == Policy::kMaxWeightDp) {
            bits = dp_solve(plan).allocation.bits;
          } else if (config.policy == Policy::kMaxWeightGreedy) {
            bits = greedy_solve(plan).allocation.bits;
          } else {
            bits = round_allocation(
                relaxation_solve(loss_coeffs, plan.weights, plan.budget));
          }
          std::fill(per_band_bits.begin(), per_band_bits.end(), 0);
          for (int v = 0; v < num_virtual; ++v) {
            per_band_bits[virt.band[v]] = bits[v];
          }
          break;
        }
      }
      result.allocation_history.push_back(per_band_bits);
    }

    for (int j = 0; j < config.num_bands; ++j) {
      channel[j] = {standard_complex_gaussian(channel_rng, normal),
                    standard_complex_gaussian(channel_rng, normal)};
    }

    std::fill(service.begin(), service.end(), 0.0);
    for (int j = 0; j < config.num_bands; ++j) {
      const int owner = band_owner[j];
      if (owner < 0) continue;
      double rate;
      if (config.policy == Policy::kPerfectFeedback) {
        const double gain =
            std::norm(channel[j][0]) + std::norm(channel[j][1]);
        rate = std::log2(1.0 + per_band_snr[j] * gain);
      } else {
        rate = codebook_rate(codebook.books[per_band_bits[j]],
                             per_band_snr[j], channel[j]);
      }
      service[owner] += rate;
    }

    for (int k = 0; k < config.num_users; ++k) {
      queue[k] = std::max(queue[k] + config.arrival_rate[k] - service[k], 0.0);
      result.mean_service[k] += service[k];
      period_service[k] += service[k];
    }

    if ((t + 1) % config.period == 0) {
      result.sample_slots.push_back(t + 1);
      result.queue_samples.push_back(queue);
      for (double& s : period_service) s /= static_cast<double>(config.period);
      result.service_samples.push_back(period_service);
      std::fill(period_service.begin(), period_service.end(), 0.0);
    }
  }

  for (double& s : result.mean_service) s /= static_cast<double>(config.horizon);
  double total = 0.0;
  for (const auto& sample : result.queue_samples) {
    for (double q : sample) total += q;
  }
  result.mean_queue =
      total / (static_cast<double>(result.queue_samples.size()) *
               static_cast<double>(config.num_users));
  return result;
}

SweepResult stability_sweep(const SimConfig& config,
                            const std::vector<double>& lambda_grid,
                            const SuperCodebook& codebook, double eps_slope,
                            int max_threads) {
  SweepResult out;
  out.lambdas = lambda_grid;
  out.stable.assign(lambda_grid.size(), false);
  out.final_slopes.assign(lambda_grid.size(), 0.0);

  auto run_point = [&](std::size_t i) {
    SimConfig point = config;
    point.arrival_rate.assign(config.num_users, lambda_grid[i]);
    point.seed = detail::mix_seed(config.seed, i);
    const SimResult sim = run(point, codebook);
    std::vector<double> mean_queue(sim.queue_samples.size());
    for (std::size_t s = 0; s < sim.queue_samples.size(); ++s) {
      double sum = 0.0;
      for (double q : sim.queue_samples[s]) sum += q;
      mean_queue[s] = sum / static_cast<double>(config.num_users);
    }
    const double slope = least_squares_slope(sim.sample_slots, mean_queue,
                                             mean_queue.size() / 2);
    out.final_slopes[i] = slope;
    out.stable[i] = slope < eps_slope;
  };

  const int workers = std::max(1, max_threads);
  if (workers == 1 || lambda_grid.size() <= 1) {
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < lambda_grid.size(); i = next++) {
          run_point(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Knee: largest lambda whose whole prefix is stable, so a single noisy
  // point above the true boundary cannot inflate it.
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!out.stable[i]) break;
    out.knee = lambda_grid[i];
  }
  return out;
}

}  // namespace fbq
