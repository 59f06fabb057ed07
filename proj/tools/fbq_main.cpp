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

// Command-line front end: rate-model tables, one-shot solves, queue
// simulations, stability sweeps, self-checks and solver timings.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbq/json_io.hpp"
#include "fbq/queue_sim.hpp"
#include "fbq/rate_models.hpp"
#include "fbq/solvers.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

int env_threads() {
  const char* v = std::getenv("FBQ_THREADS");
  if (v == nullptr) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

fbq::Channel draw_channel(std::mt19937_64& rng,
                          std::normal_distribution<>& normal) {
  return {std::complex<double>(normal(rng) * M_SQRT1_2,
                               normal(rng) * M_SQRT1_2),
          std::complex<double>(normal(rng) * M_SQRT1_2,
                               normal(rng) * M_SQRT1_2)};
}

// splitmix64 finalizer, same mixing as the library uses internally.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct RatesArgs {
  std::string out_dir;
  int budget = 12;
  double snr_min = -15.0, snr_max = 15.0, snr_step = 0.5;
  std::string snr_list = "-10,0,10";
  int candidates = 100;
  int channels = 1000;
  int mc_draws = 20000;
  std::uint64_t seed = 1;
};

int run_rates(const RatesArgs& args, bool quiet) {
  std::filesystem::create_directories(args.out_dir);

  std::ostringstream beta_csv;
  beta_csv << "snr_db,beta1,beta2,ratio\n";
  for (double db = args.snr_min; db <= args.snr_max + 1e-9;
       db += args.snr_step) {
    const double s = std::pow(10.0, db / 10.0);
    const double b1 = fbq::beta1(s);
    const double b2 = fbq::beta2(s);
    beta_csv << fmt(db) << "," << fmt(b1) << "," << fmt(b2) << ","
             << fmt(b2 / b1) << "\n";
  }
  fbq::write_text_file(args.out_dir + "/beta.csv", beta_csv.str());

  // RVQ geometric-loss approximation against an actual super-codebook,
  // Monte-Carlo averaged over common channel draws for all (snr, b) cells.
  const auto snrs_db = parse_double_list(args.snr_list);
  std::ostringstream rvq_csv;
  rvq_csv << "snr_db,bits,analytic,codebook_mc\n";
  if (!snrs_db.empty() && args.mc_draws > 0) {
    const auto codebook = fbq::generate_supercodebook(
        args.budget, args.candidates, args.channels, args.seed);
    std::mt19937_64 rng(mix(args.seed, 0x7276u));
    std::normal_distribution<> normal;
    std::vector<fbq::Channel> draws(args.mc_draws);
    for (auto& h : draws) h = draw_channel(rng, normal);
    for (double db : snrs_db) {
      const double s = std::pow(10.0, db / 10.0);
      const auto model = fbq::MisoModel::from_snr(s);
      for (int b = 0; b <= args.budget; ++b) {
        double sum = 0.0;
        for (const auto& h : draws) {
          sum += fbq::codebook_rate(codebook.books[b], s, h);
        }
        rvq_csv << fmt(db) << "," << b << ","
                << fmt(fbq::miso_rvq_rate(model, b)) << ","
                << fmt(sum / args.mc_draws) << "\n";
      }
    }
  }
  fbq::write_text_file(args.out_dir + "/rvq.csv", rvq_csv.str());
  if (!quiet) {
    std::cout << "wrote " << args.out_dir << "/beta.csv and "
              << args.out_dir << "/rvq.csv\n";
  }
  return 0;
}

struct SolveArgs {
  std::string config;
  std::string solver = "dp";
  std::string out;
};

int run_solve(const SolveArgs& args, bool quiet) {
  const auto problem = fbq::problem_from_json(fbq::load_json_file(args.config));
  json report;
  report["solver"] = args.solver;
  if (args.solver == "dp" || args.solver == "brute") {
    fbq::Allocation alloc;
    if (args.solver == "dp") {
      auto result = fbq::dp_solve(problem);
      alloc = std::move(result.allocation);
      report["certificate"] = {{"factor", 1.0},
                               {"op_count", result.trace.op_count}};
    } else {
      alloc = fbq::brute_force_solve(problem);
      report["certificate"] = {{"factor", 1.0}};
    }
    report["bits"] = alloc.bits;
    report["objective"] = alloc.objective_value;
  } else if (args.solver == "greedy") {
    const auto result = fbq::greedy_solve(problem);
    report["bits"] = result.allocation.bits;
    report["objective"] = result.allocation.objective_value;
    report["certificate"] = {
        {"factor", result.guaranteed ? 1.0 - std::exp(-1.0) : 0.0},
        {"guaranteed", result.guaranteed},
        {"extractions", result.extractions}};
  } else if (args.solver == "relaxation") {
    // Geometric rate model A(b) = A_inf - c 2^{-b}: the loss coefficient c
    // is recovered from the first table increment, c = 2 (A(1) - A(0)).
    if (problem.budget < 1) {
      throw fbq::ConfigError("relaxation needs budget >= 1");
    }
    std::vector<double> loss(problem.num_users);
    for (std::size_t k = 0; k < problem.num_users; ++k) {
      loss[k] = 2.0 * (problem.rate_table.entries[k][1] -
                       problem.rate_table.entries[k][0]);
    }
    const auto frac =
        fbq::relaxation_solve(loss, problem.weights, problem.budget);
    const auto alloc = fbq::round_allocation(frac, problem);
    report["bits"] = alloc.bits;
    report["objective"] = alloc.objective_value;
    report["fractional_bits"] = frac.bits;
    report["certificate"] = {{"factor", 0.5}, {"eta", frac.eta}};
  } else {
    throw fbq::ConfigError("unknown solver: " + args.solver);
  }
  const std::string text = report.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    fbq::write_text_file(args.out, text);
    if (!quiet) std::cout << "wrote " << args.out << "\n";
  }
  return 0;
}

struct SimArgs {
  std::string config;
  std::string out_dir;
  std::string policy;  // optional override
  int horizon = 0;     // optional override
  std::int64_t seed = -1;
};

void apply_overrides(fbq::SimConfig& config, const SimArgs& args) {
  if (!args.policy.empty()) config.policy = fbq::parse_policy(args.policy);
  if (args.horizon > 0) config.horizon = args.horizon;
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  config.validate();
}

int run_simulate(const SimArgs& args, bool quiet) {
  auto [config, spec] = fbq::sim_config_from_json(
      fbq::load_json_file(args.config));
  apply_overrides(config, args);
  std::filesystem::create_directories(args.out_dir);
  const auto codebook = fbq::generate_supercodebook(
      config.budget, spec.num_candidates, spec.num_channels, spec.seed);
  const auto result = fbq::run(config, codebook);

  const std::string name = fbq::policy_name(config.policy);
  fbq::write_text_file(args.out_dir + "/series_" + name + ".csv",
                       fbq::sim_series_csv(result));
  json summary = fbq::summary_json(result);
  summary["config"] = fbq::to_json(config, spec);
  fbq::write_text_file(args.out_dir + "/summary_" + name + ".json",
                       summary.dump(2) + "\n");
  if (!quiet) {
    std::cout << name << ": mean queue " << fmt(result.mean_queue)
              << " bits, overhead " << fmt(result.overhead_bits_per_slot)
              << " bits/slot\n";
  }
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string out_dir;
  std::string policies;  // comma list; empty = config policy
  double lambda_min = 0.0, lambda_max = 0.0, lambda_step = 0.0;
  int horizon = 0;
  std::int64_t seed = -1;
};

int run_sweep(const SweepArgs& args, bool quiet) {
  const json file = fbq::load_json_file(args.config);
  auto [config, spec] = fbq::sim_config_from_json(file);
  SimArgs overrides;
  overrides.horizon = args.horizon;
  overrides.seed = args.seed;
  apply_overrides(config, overrides);

  std::vector<double> grid;
  if (args.lambda_step > 0.0) {
    for (double l = args.lambda_min; l <= args.lambda_max + 1e-12;
         l += args.lambda_step) {
      grid.push_back(l);
    }
  } else if (file.contains("lambda_grid")) {
    grid = file.at("lambda_grid").get<std::vector<double>>();
  }
  if (grid.empty()) {
    throw fbq::ConfigError(
        "no lambda grid: pass --lambda-min/max/step or a lambda_grid field");
  }

  std::vector<std::string> policies;
  if (args.policies.empty()) {
    policies.push_back(fbq::policy_name(config.policy));
  } else {
    std::stringstream ss(args.policies);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) policies.push_back(item);
    }
  }

  std::filesystem::create_directories(args.out_dir);
  const auto codebook = fbq::generate_supercodebook(
      config.budget, spec.num_candidates, spec.num_channels, spec.seed);
  const int threads = env_threads();

  json knees;
  for (const auto& name : policies) {
    fbq::SimConfig point = config;
    point.policy = fbq::parse_policy(name);
    const auto sweep =
        fbq::stability_sweep(point, grid, codebook, 1e-3, threads);
    json out{{"policy", name},
             {"lambdas", sweep.lambdas},
             {"stable", sweep.stable},
             {"final_slopes", sweep.final_slopes},
             {"knee", sweep.knee},
             {"overhead_bits_per_slot",
              fbq::overhead_estimate(config.budget, config.num_bands,
                                     config.period)}};
    fbq::write_text_file(args.out_dir + "/sweep_" + name + ".json",
                         out.dump(2) + "\n");
    knees[name] = sweep.knee;
    if (!quiet) std::cout << name << ": knee " << fmt(sweep.knee) << "\n";
  }
  fbq::write_text_file(args.out_dir + "/knees.json", knees.dump(2) + "\n");
  return 0;
}

int run_check(bool quiet) {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    if (!ok) ++failures;
    if (!quiet) std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
  };

  {  // DP equals exhaustive enumeration on random monotone instances.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      fbq::AllocationProblem p;
      p.num_users = 1 + rng() % 5;
      p.budget = static_cast<int>(rng() % 9);
      for (std::size_t k = 0; k < p.num_users; ++k) {
        p.weights.push_back(unit(rng));
        std::vector<double> row{0.0};
        for (int j = 0; j < p.budget; ++j) row.push_back(row.back() + unit(rng));
        p.rate_table.entries.push_back(std::move(row));
      }
      const double dp = fbq::dp_solve(p).allocation.objective_value;
      const double brute = fbq::brute_force_solve(p).objective_value;
      ok = std::abs(dp - brute) <= 1e-9 * std::max(1.0, std::abs(brute));
    }
    report("dp matches exhaustive search", ok);
  }

  {  // Greedy approximation bound on submodular MISO tables.
    std::mt19937_64 rng(4048);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double factor = 1.0 - std::exp(-1.0);
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      fbq::ChannelProfile profile;
      fbq::AllocationProblem p;
      p.num_users = 2 + rng() % 4;
      p.budget = 4 + static_cast<int>(rng() % 6);
      for (std::size_t k = 0; k < p.num_users; ++k) {
        fbq::ChannelProfile::User u;
        u.snr_bar = std::pow(10.0, 2.0 * unit(rng) - 1.0);
        profile.users.push_back(u);
        p.weights.push_back(unit(rng) + 0.05);
      }
      p.rate_table = fbq::build_rate_table(profile, p.budget);
      const double greedy = fbq::greedy_solve(p).allocation.objective_value;
      const double opt = fbq::dp_solve(p).allocation.objective_value;
      ok = greedy >= factor * opt - 1e-12;
    }
    report("greedy within (1 - 1/e) of optimal", ok);
  }

  {  // Water-filling KKT conditions.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const int users = 1 + static_cast<int>(rng() % 6);
      std::vector<double> loss(users), weights(users);
      for (int k = 0; k < users; ++k) {
        loss[k] = std::pow(10.0, 4.0 * unit(rng) - 2.0);
        weights[k] = unit(rng) + 1e-3;
      }
      const int budget = 1 + static_cast<int>(rng() % 16);
      const auto frac = fbq::relaxation_solve(loss, weights, budget);
      double total = 0.0;
      for (int k = 0; k < users && ok; ++k) {
        const double theta = weights[k] * loss[k] * std::log(2.0);
        total += frac.bits[k];
        if (frac.bits[k] > 1e-12) {
          ok = std::abs(theta * std::exp2(-frac.bits[k]) - frac.eta) <=
               1e-9 * frac.eta;
        } else {
          ok = theta <= frac.eta * (1.0 + 1e-9);
        }
      }
      ok = ok && std::abs(total - budget) <= 1e-9 * budget;
    }
    report("water-filling satisfies KKT", ok);
  }

  {  // SISO incremental-gain identity and the beta ratio range.
    const fbq::SisoModel m{1.0, 20.0};
    const double c = m.normalization();
    bool ok = true;
    for (int b = 0; b <= 10 && ok; ++b) {
      const double direct = fbq::siso_rate(m, b + 1) - fbq::siso_rate(m, b);
      ok = std::abs(c * fbq::siso_incremental_gain(m, b) - direct) <= 1e-10;
    }
    report("siso incremental gain identity", ok);
    ok = true;
    for (double db = -15.0; db <= 15.0 + 1e-9 && ok; db += 1.0) {
      const double s = std::pow(10.0, db / 10.0);
      const double ratio = fbq::beta2(s) / fbq::beta1(s);
      ok = ratio > 1.0 && ratio <= 2.0;
    }
    report("beta2/beta1 within (1, 2]", ok);
  }

  if (!quiet) {
    std::cout << (failures == 0 ? "all checks passed"
                                : "some checks FAILED")
              << "\n";
  }
  return failures == 0 ? 0 : 1;
}

int run_bench(const std::string& sizes, bool quiet) {
  std::stringstream ss(sizes);
  std::string item;
  if (!quiet) {
    std::cout << "users budget dp_ops dp_formula dp_us greedy_pops greedy_us\n";
  }
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw fbq::ConfigError("bad size: " + item);
    const int users = std::stoi(item.substr(0, x));
    const int budget = std::stoi(item.substr(x + 1));

    fbq::AllocationProblem p;
    p.num_users = users;
    p.budget = budget;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < users; ++k) {
      p.weights.push_back(unit(rng) + 0.05);
      std::vector<double> row{0.0};
      double inc = unit(rng) + 0.05;
      for (int j = 0; j < budget; ++j) {
        row.push_back(row.back() + inc);
        inc *= 0.8;
      }
      p.rate_table.entries.push_back(std::move(row));
    }
    p.rate_table.monotone = true;
    p.rate_table.submodular = true;

    const auto t0 = std::chrono::steady_clock::now();
    const auto dp = fbq::dp_solve(p);
    const auto t1 = std::chrono::steady_clock::now();
    const auto greedy = fbq::greedy_solve(p);
    const auto t2 = std::chrono::steady_clock::now();
    const auto us = [](auto a, auto b) {
      return std::chrono::duration_cast<std::chrono::microseconds>(b - a)
          .count();
    };
    const std::uint64_t formula = static_cast<std::uint64_t>(users) *
                                  (budget + 1) * (budget + 2) / 2;
    std::cout << users << " " << budget << " " << dp.trace.op_count << " "
              << formula << " " << us(t0, t1) << " " << greedy.extractions
              << " " << us(t1, t2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feedback-bit allocation toolkit"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  RatesArgs rates;
  auto* rates_cmd = app.add_subcommand("rates", "export rate-model tables");
  rates_cmd->add_option("--out", rates.out_dir, "output directory")
      ->required();
  rates_cmd->add_option("--budget", rates.budget, "max feedback bits");
  rates_cmd->add_option("--snr-min", rates.snr_min, "beta sweep start, dB");
  rates_cmd->add_option("--snr-max", rates.snr_max, "beta sweep end, dB");
  rates_cmd->add_option("--snr-step", rates.snr_step, "beta sweep step, dB");
  rates_cmd->add_option("--snr-list", rates.snr_list,
                        "comma list of SNRs (dB) for the RVQ table");
  rates_cmd->add_option("--candidates", rates.candidates,
                        "random codebooks per bit count");
  rates_cmd->add_option("--channels", rates.channels,
                        "scoring channels per codebook");
  rates_cmd->add_option("--mc-draws", rates.mc_draws,
                        "Monte-Carlo channels for the RVQ table");
  rates_cmd->add_option("--seed", rates.seed, "codebook seed");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve one allocation instance");
  solve_cmd->add_option("--config", solve.config, "problem JSON")->required();
  solve_cmd->add_option("--solver", solve.solver,
                        "dp | greedy | relaxation | brute");
  solve_cmd->add_option("--out", solve.out, "result JSON (default stdout)");

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run one queue simulation");
  sim_cmd->add_option("--config", sim.config, "sim config JSON")->required();
  sim_cmd->add_option("--out", sim.out_dir, "output directory")->required();
  sim_cmd->add_option("--policy", sim.policy, "policy override");
  sim_cmd->add_option("--horizon", sim.horizon, "horizon override, slots");
  sim_cmd->add_option("--seed", sim.seed, "seed override");

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "arrival-rate stability sweep");
  sweep_cmd->add_option("--config", sweep.config, "sim config JSON")
      ->required();
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory")
      ->required();
  sweep_cmd->add_option("--policy", sweep.policies,
                        "comma list of policies (default: config)");
  sweep_cmd->add_option("--lambda-min", sweep.lambda_min, "grid start");
  sweep_cmd->add_option("--lambda-max", sweep.lambda_max, "grid end");
  sweep_cmd->add_option("--lambda-step", sweep.lambda_step, "grid step");
  sweep_cmd->add_option("--horizon", sweep.horizon, "horizon override");
  sweep_cmd->add_option("--seed", sweep.seed, "seed override");

  auto* check_cmd = app.add_subcommand("check", "run built-in self checks");
  std::string sizes = "4x12,8x12,50x50";
  auto* bench_cmd = app.add_subcommand("bench", "time the solvers");
  bench_cmd->add_option("--sizes", sizes, "comma list of LxB instance sizes");

  // --quiet is also accepted after the subcommand name.
  for (auto* sub : app.get_subcommands({})) {
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a config error
  }

  try {
    if (rates_cmd->parsed()) return run_rates(rates, quiet);
    if (solve_cmd->parsed()) return run_solve(solve, quiet);
    if (sim_cmd->parsed()) return run_simulate(sim, quiet);
    if (sweep_cmd->parsed()) return run_sweep(sweep, quiet);
    if (check_cmd->parsed()) return run_check(quiet);
    if (bench_cmd->parsed()) return run_bench(sizes, quiet);
  } catch (const fbq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
