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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cryomux/error.hpp"
#include "cryomux/scenarios.hpp"
#include "cryomux/table.hpp"

namespace fs = std::filesystem;
using namespace cryomux;

namespace {

struct Pending {
  fs::path target;
  std::string contents;
};

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

// Loads and schema-checks a scenario file; returns an exit code on failure.
std::optional<int> load(const std::string& path, std::optional<std::uint64_t> seed,
                        cli::ScenarioFile& file) {
  const auto text = slurp(path);
  if (!text) return fail(cli::kSchemaViolation, "cannot read '" + path + "'");
  try {
    file = cli::parse_scenario(*text);
    if (seed) file.seed = *seed;
    cli::validate_scenario(file);
  } catch (const cli::UnknownScenario& e) {
    return fail(cli::kUnknownScenario, e.what());
  } catch (const Error& e) {
    return fail(cli::kSchemaViolation, e.what());
  }
  return std::nullopt;
}

std::vector<Pending> render(const cli::ScenarioOutput& out, const fs::path& dir,
                            const std::string& format) {
  std::vector<Pending> files;
  if (format == "json") {
    nlohmann::json j{{"scenario", out.scenario}, {"hash", out.hash}};
    j["tables"] = nlohmann::json::array();
    for (const auto& t : out.tables) j["tables"].push_back(io::to_json(t));
    files.push_back({dir / (out.scenario + ".json"), j.dump(2) + "\n"});
    return files;
  }
  for (const auto& t : out.tables) {
    std::ostringstream ss;
    io::write_csv(ss, t, out.scenario, out.hash);
    files.push_back({dir / (out.scenario + "__" + t.name + ".csv"), ss.str()});
  }
  return files;
}

int commit(const std::vector<Pending>& files, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return fail(cli::kDownstreamError, "cannot create '" + dir.string() + "'");
  std::vector<fs::path> staged;
  auto cleanup = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& f : files) {
    fs::path tmp = f.target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    out << f.contents;
    out.close();
    staged.push_back(tmp);
    if (!out) {
      cleanup();
      return fail(cli::kDownstreamError, "cannot write '" + tmp.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(staged[i], files[i].target, ec);
    if (ec) {
      cleanup();
      return fail(cli::kDownstreamError, "cannot write '" + files[i].target.string() + "'");
    }
  }
  for (const auto& f : files) std::cout << f.target.string() << "\n";
  return cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cryomux: cryogenic multiplexer experiment runner"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  bool as_json = false;

  auto* run = app.add_subcommand("run", "run a scenario file and write its tables");
  run->add_option("file", file, "scenario JSON file")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: $CRYOMUX_OUT_DIR or .)");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* list = app.add_subcommand("list", "list registered scenarios");
  list->add_flag("--json", as_json, "machine-readable output");

  auto* validate = app.add_subcommand("validate", "check a scenario file without running it");
  validate->add_option("file", file, "scenario JSON file")->required();
  validate->add_option("--seed", seed, "override the scenario seed");

  CLI11_PARSE(app, argc, argv);

  if (*list) {
    if (as_json) {
      std::cout << cli::scenarios_json().dump(2) << "\n";
    } else {
      for (const auto& s : cli::list_scenarios()) {
        std::cout << s.name << "\t" << s.description << "\n";
      }
    }
    return cli::kOk;
  }

  cli::ScenarioFile scenario;
  if (auto code = load(file, seed, scenario)) return *code;

  if (*validate) {
    std::cout << "ok " << scenario.scenario << " hash=" << cli::scenario_hash(scenario) << "\n";
    return cli::kOk;
  }

  fs::path dir = ".";
  if (const char* env = std::getenv("CRYOMUX_OUT_DIR"); env && *env) dir = env;
  if (!out_dir.empty()) dir = out_dir;

  cli::ScenarioOutput output;
  try {
    output = cli::run_scenario(scenario);
  } catch (const std::exception& e) {
    return fail(cli::kDownstreamError, e.what());
  }
  return commit(render(output, dir, format), dir);
}
