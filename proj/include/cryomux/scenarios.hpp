// Copyright 2026 The cryomux Authors
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

#pragma once

// Named experiments that wire the library modules together and produce
// plot-ready tables. A scenario file is JSON:
//
//   {"scenario": "fig4b_tdm", "seed": 7, "inputs": {...}}
//
// `inputs` keys carry unit suffixes and are validated strictly; missing keys
// take documented defaults.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryomux/error.hpp"
#include "cryomux/table.hpp"
#include "json.hpp"

namespace cryomux::cli {

enum ExitCode : int {
  kOk = 0,
  kUnknownScenario = 2,
  kSchemaViolation = 3,
  kDownstreamError = 4,
};

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

// Registered scenarios in stable (alphabetical) order.
const std::vector<ScenarioInfo>& list_scenarios();
nlohmann::json scenarios_json();

struct ScenarioFile {
  std::string scenario;
  std::uint64_t seed = 0;
  nlohmann::json inputs = nlohmann::json::object();
};

// Throws ConfigError for malformed files and UnknownScenario for names not in
// the registry.
ScenarioFile parse_scenario(std::string_view text);

// Checks `inputs` against the scenario schema without running it.
void validate_scenario(const ScenarioFile& file);

struct ScenarioOutput {
  std::string scenario;
  std::string hash;
  std::vector<io::Table> tables;
};

ScenarioOutput run_scenario(const ScenarioFile& file);

// Hash over the canonical JSON of (scenario, seed, inputs).
std::string scenario_hash(const ScenarioFile& file);

}  // namespace cryomux::cli
