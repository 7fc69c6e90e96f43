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

// Plot-ready output tables and their CSV/JSON serialisation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cryomux::io {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// Shortest round-trip decimal; scientific notation when |x| >= 1e6 or
// 0 < |x| < 1e-6.
std::string format_number(double x);

// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Line 1: "# scenario=<name> hash=<hash>"; line 2: column names; line 3:
// units; then one line per row.
void write_csv(std::ostream& out, const Table& table, std::string_view scenario,
               std::string_view hash);

nlohmann::json to_json(const Table& table);

}  // namespace cryomux::io
