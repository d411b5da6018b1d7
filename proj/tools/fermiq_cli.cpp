// Copyright 2026 The fermiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fermiq run <scenario> [--config FILE] [--out DIR] [--threads N] [--<key> VALUE ...]

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "config.hpp"
#include "fermiq/errors.hpp"
#include "scenarios.hpp"

namespace {

// Flag spellings that differ from the config key.
const std::map<std::string, std::string> kAliases = {{"trajectories", "traj"}, {"t-final", "t"}, {"pde-times", "pde_times"}};

}  // namespace

int main(int argc, char** argv) {
  using fermiq::cli::Config;
  CLI::App app{"fermiq: Majorana phase-space scenarios"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List scenarios and their keys");
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->set_help_flag("--help", "Print this help message and exit");  // frees -h for the FD step key
  std::string scenario;
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::vector<std::string> sets;
  run->add_option("scenario", scenario, "Scenario name")->required();
  run->add_option("--config,-c", config_path, "key = value configuration file");
  run->add_option("--out,-o", out_dir, "Output directory (default: $FERMIQ_OUT_DIR, then ./fermiq_out)");
  run->add_option("--threads,-j", threads, "Worker cap; 0 uses all cores")->check(CLI::NonNegativeNumber);
  run->add_option("--set", sets, "Extra key=value assignments");

  std::set<std::string> keys;
  for (const auto& s : fermiq::cli::scenarios())
    for (const auto& k : s.keys)
      if (k != "threads") keys.insert(k);
  std::map<std::string, std::string> flag_values;
  for (const auto& k : keys) {
    std::string flag = "--" + k;
    for (const auto& [alias, target] : kAliases)
      if (target == k) flag += ",--" + alias;
    run->add_option(flag, flag_values[k], "config key '" + k + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list->parsed()) {
    for (const auto& s : fermiq::cli::scenarios()) {
      std::cout << s.name << ": " << s.summary << "\n  keys:";
      for (const auto& k : s.keys) std::cout << " " << k;
      std::cout << "\n";
    }
    return 0;
  }

  try {
    const auto& info = fermiq::cli::scenario_info(scenario);
    Config cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) fermiq::fail(fermiq::ErrorCode::ConfigParse, "cannot open config file " + config_path);
      cfg.parse(in, config_path);
    }
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) fermiq::fail(fermiq::ErrorCode::ConfigParse, "--set expects key=value, got " + s);
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [k, v] : flag_values)
      if (run->count("--" + k) > 0) {
        if (info.keys.count(k) == 0)
          fermiq::fail(fermiq::ErrorCode::ConfigParse, "flag --" + k + " does not apply to " + scenario);
        cfg.set(k, v);
      }
    if (run->count("--threads") == 0 && cfg.has("threads")) threads = static_cast<int>(cfg.integer("threads", 0));

    std::string out = out_dir;
    if (out.empty()) {
      const char* env = std::getenv("FERMIQ_OUT_DIR");
      out = env && *env ? env : "fermiq_out";
    }
    const auto res = fermiq::cli::run_scenario(scenario, cfg, out, threads);
    std::cout << (res.pass ? "PASS " : "FAIL ") << scenario << " -> " << res.report.string() << "\n";
    return res.pass ? 0 : 1;
  } catch (const fermiq::Error& e) {
    std::cerr << "fermiq " << scenario << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fermiq " << scenario << ": " << e.what() << "\n";
    return 2;
  }
}
