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

// Strict helpers for reading unit-suffixed JSON config objects. Every failure
// surfaces as ConfigError so callers can map it to a schema violation.

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cryomux/error.hpp"
#include "json.hpp"

namespace cryomux::config {

inline void require_object(const nlohmann::json& j, std::string_view what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
}

inline void allow_only(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                       std::string_view what) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || item.key() == k;
    if (!known) throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
  }
}

inline double number(const nlohmann::json& j, std::string_view key, double fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ConfigError("key '" + std::string(key) + "' must be a number");
  return it->get<double>();
}

inline double required_number(const nlohmann::json& j, std::string_view key) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ConfigError("missing required key '" + std::string(key) + "'");
  if (!it->is_number()) throw ConfigError("key '" + std::string(key) + "' must be a number");
  return it->get<double>();
}

inline bool boolean(const nlohmann::json& j, std::string_view key, bool fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw ConfigError("key '" + std::string(key) + "' must be a boolean");
  return it->get<bool>();
}

inline std::string string(const nlohmann::json& j, std::string_view key, std::string fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_string()) throw ConfigError("key '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

inline std::vector<double> number_list(const nlohmann::json& j, std::string_view key,
                                       std::vector<double> fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_array()) throw ConfigError("key '" + std::string(key) + "' must be an array");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) throw ConfigError("key '" + std::string(key) + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace cryomux::config
