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

#include "fbq/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fbq {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing field: ") + key);
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field ") + key + ": " + e.what());
  }
}

}  // namespace

json to_json(const AllocationProblem& problem) {
  return json{{"num_users", problem.num_users},
              {"budget", problem.budget},
              {"weights", problem.weights},
              {"rate_table", problem.rate_table.entries}};
}

AllocationProblem problem_from_json(const json& j) {
  AllocationProblem problem;
  problem.num_users = require<std::size_t>(j, "num_users");
  problem.budget = require<int>(j, "budget");
  problem.weights = require<std::vector<double>>(j, "weights");
  problem.rate_table.entries =
      require<std::vector<std::vector<double>>>(j, "rate_table");
  problem.rate_table.monotone = check_monotone(problem.rate_table);
  problem.rate_table.submodular = check_submodular(problem.rate_table);
  try {
    problem.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid problem: ") + e.what());
  }
  return problem;
}

json to_json(const Allocation& alloc) {
  return json{{"bits", alloc.bits}, {"objective", alloc.objective_value}};
}

Allocation allocation_from_json(const json& j) {
  Allocation alloc;
  alloc.bits = require<std::vector<int>>(j, "bits");
  alloc.objective_value = require<double>(j, "objective");
  return alloc;
}

json to_json(const SuperCodebook& codebook) {
  json books = json::array();
  for (const auto& book : codebook.books) {
    json words = json::array();
    for (const auto& w : book) {
      words.push_back({{w[0].real(), w[0].imag()}, {w[1].real(), w[1].imag()}});
    }
    books.push_back(std::move(words));
  }
  return json{{"seed", codebook.seed}, {"books", books}};
}

SuperCodebook supercodebook_from_json(const json& j) {
  SuperCodebook codebook;
  codebook.seed = require<std::uint64_t>(j, "seed");
  for (const auto& book : require<json>(j, "books")) {
    std::vector<Codeword> words;
    for (const auto& w : book) {
      words.push_back(Codeword{
          std::complex<double>(w.at(0).at(0).get<double>(),
                               w.at(0).at(1).get<double>()),
          std::complex<double>(w.at(1).at(0).get<double>(),
                               w.at(1).at(1).get<double>())});
    }
    codebook.books.push_back(std::move(words));
  }
  return codebook;
}

json to_json(const SimConfig& config, const CodebookSpec& books) {
  return json{{"num_users", config.num_users},
              {"num_bands", config.num_bands},
              {"budget", config.budget},
              {"period", config.period},
              {"horizon", config.horizon},
              {"assignment", config.assignment},
              {"snr_db", config.snr_db},
              {"arrival_rate", config.arrival_rate},
              {"policy", policy_name(config.policy)},
              {"seed", config.seed},
              {"supercodebook", {{"num_candidates", books.num_candidates},
                                 {"num_channels", books.num_channels},
                                 {"seed", books.seed}}}};
}

std::pair<SimConfig, CodebookSpec> sim_config_from_json(const json& j) {
  SimConfig config;
  config.num_users = require<int>(j, "num_users");
  config.num_bands = require<int>(j, "num_bands");
  config.budget = require<int>(j, "budget");
  config.period = require<int>(j, "period");
  config.horizon = require<int>(j, "horizon");
  config.assignment = require<std::vector<std::vector<int>>>(j, "assignment");
  config.snr_db = require<std::vector<double>>(j, "snr_db");
  config.arrival_rate = require<std::vector<double>>(j, "arrival_rate");
  config.policy = parse_policy(require<std::string>(j, "policy"));
  config.seed = j.value("seed", std::uint64_t{0});
  CodebookSpec books;
  if (j.contains("supercodebook")) {
    const json& s = j.at("supercodebook");
    books.num_candidates = s.value("num_candidates", books.num_candidates);
    books.num_channels = s.value("num_channels", books.num_channels);
    books.seed = s.value("seed", books.seed);
  }
  config.validate();
  return {std::move(config), books};
}

json summary_json(const SimResult& result) {
  return json{{"mean_queue", result.mean_queue},
              {"mean_service", result.mean_service},
              {"overhead_bits_per_slot", result.overhead_bits_per_slot},
              {"allocation_history", result.allocation_history}};
}

std::string rate_table_csv(const RateTable& table) {
  std::ostringstream out;
  out << "user";
  for (int j = 0; j <= table.budget(); ++j) out << ",bits_" << j;
  out << "\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    out << i;
    for (double v : table.entries[i]) out << "," << fmt_double(v);
    out << "\n";
  }
  return out.str();
}

std::string sim_series_csv(const SimResult& result) {
  std::ostringstream out;
  const std::size_t users =
      result.queue_samples.empty() ? 0 : result.queue_samples.front().size();
  out << "slot";
  for (std::size_t k = 0; k < users; ++k) out << ",queue_" << k;
  for (std::size_t k = 0; k < users; ++k) out << ",service_" << k;
  out << "\n";
  for (std::size_t s = 0; s < result.sample_slots.size(); ++s) {
    out << result.sample_slots[s];
    for (double q : result.queue_samples[s]) out << "," << fmt_double(q);
    for (double v : result.service_samples[s]) out << "," << fmt_double(v);
    out << "\n";
  }
  return out.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace fbq
