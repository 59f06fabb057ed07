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

#ifndef FBQ_JSON_IO_HPP_
#define FBQ_JSON_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "fbq/problem.hpp"
#include "fbq/queue_sim.hpp"
#include "fbq/rate_models.hpp"

namespace fbq {

// Generation parameters carried in sim configs so a super-codebook can be
// rebuilt deterministically.
struct CodebookSpec {
  int num_candidates = 100;
  int num_channels = 1000;
  std::uint64_t seed = 1;
};

nlohmann::json to_json(const AllocationProblem& problem);
AllocationProblem problem_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Allocation& alloc);
Allocation allocation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SuperCodebook& codebook);
SuperCodebook supercodebook_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimConfig& config, const CodebookSpec& books);
// Returns the config plus the codebook spec found in the file (defaults
// apply when absent).
std::pair<SimConfig, CodebookSpec> sim_config_from_json(
    const nlohmann::json& j);

nlohmann::json summary_json(const SimResult& result);

// CSV exports. Rows: user per line (rate table), sampled slot per line
// (sim series). All doubles printed with %.17g so re-runs are byte-stable.
std::string rate_table_csv(const RateTable& table);
std::string sim_series_csv(const SimResult& result);

nlohmann::json load_json_file(const std::string& path);   // ConfigError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fbq

#endif  // FBQ_JSON_IO_HPP_
