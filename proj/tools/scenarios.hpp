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

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "config.hpp"

namespace fermiq::cli {

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::set<std::string> keys;
};

const std::vector<ScenarioInfo>& scenarios();
const ScenarioInfo& scenario_info(const std::string& name);  // ConfigParse if unknown

struct RunResult {
  bool pass = false;
  std::filesystem::path report;  // JSON summary
};

// Validates keys, runs the scenario, writes <out>/<scenario>.json plus CSV
// side files. `threads` caps workers and never changes the output bytes.
RunResult run_scenario(const std::string& name, const Config& cfg, const std::filesystem::path& out, int threads);

}  // namespace fermiq::cli
