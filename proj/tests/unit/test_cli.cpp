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


#include <fstream>
#include <json.hpp>
#include <sstream>

#include "config.hpp"
#include "scenarios.hpp"
#include "../support.hpp"

namespace fermiq::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("fermiq_cli_test_" + tag);
  fs::remove_all(p);
  return p;
}

json load(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, ParsesCommentsAndOverrides) {
  std::istringstream in("# header\nmodes = 2\n\n  k=1.5   # trailing\nmodes = 3\nlist = 1, 2 3\n");
  Config c;
  c.parse(in, "mem");
  EXPECT_EQ(c.integer("modes", 0), 3);
  EXPECT_EQ(c.real("k", 0.0), 1.5);
  EXPECT_EQ(c.integers("list", {}), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(c.str("absent", "dflt"), "dflt");
  c.set("modes", "4");
  EXPECT_EQ(c.integer("modes", 0), 4);
  EXPECT_EQ(c.resolved().at("absent"), "dflt");
  EXPECT_EQ(c.resolved().at("k"), "1.5");
}

TEST(Config, IntegersAcceptExponentNotation) {
  Config c;
  c.set("n", "1e5");
  EXPECT_EQ(c.integer("n", 0), 100000);
  c.set("n", "2.5");
  EXPECT_FERMIQ_ERROR(c.integer("n", 0), ErrorCode::ConfigParse);
}

TEST(Config, RejectsMalformedInput) {
  Config c;
  std::istringstream bad("novalue\n");
  EXPECT_FERMIQ_ERROR(c.parse(bad, "mem"), ErrorCode::ConfigParse);
  std::istringstream empty_key(" = 3\n");
  EXPECT_FERMIQ_ERROR(c.parse(empty_key, "mem"), ErrorCode::ConfigParse);
  c.set("x", "abc");
  EXPECT_FERMIQ_ERROR(c.real("x", 0.0), ErrorCode::ConfigParse);
  c.set("s", "-1");
  EXPECT_FERMIQ_ERROR(c.seed("s", 0), ErrorCode::ConfigParse);
  EXPECT_FERMIQ_ERROR(c.restrict_to({"x"}), ErrorCode::ConfigParse);
  EXPECT_NO_THROW(c.restrict_to({"x", "s"}));
}

TEST(Scenarios, RegistryIsComplete) {
  const std::vector<std::string> expected{"verify-identities", "resolution", "qfunc", "evolve-unitary",
                                          "evolve-dissipative", "volume", "bosonic-compare"};
  ASSERT_EQ(scenarios().size(), expected.size());
  for (const auto& n : expected) {
    EXPECT_EQ(scenario_info(n).name, n);
    EXPECT_EQ(scenario_info(n).keys.count("seed"), 1u);
  }
  EXPECT_FERMIQ_ERROR(scenario_info("nope"), ErrorCode::ConfigParse);
}

TEST(Scenarios, UnknownKeyIsRejected) {
  Config c;
  c.set("bogus", "1");
  EXPECT_FERMIQ_ERROR(run_scenario("volume", c, scratch("bogus"), 1), ErrorCode::ConfigParse);
  EXPECT_FERMIQ_ERROR(run_scenario("nope", Config{}, scratch("nope"), 1), ErrorCode::ConfigParse);
}

TEST(Scenarios, BosonicReport) {
  const fs::path out = scratch("bosonic");
  Config c;
  c.set("modes", "1");
  const RunResult r = run_scenario("bosonic-compare", c, out, 1);
  EXPECT_TRUE(r.pass);
  const json j = load(r.report);
  EXPECT_EQ(j["scenario"], "bosonic-compare");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_FALSE(j["config"].contains("threads"));
  EXPECT_EQ(j["config"]["modes"], "1");
  EXPECT_LE(j["metrics"]["max_residual"].get<double>(), 1e-10);
  EXPECT_TRUE(fs::exists(out / "bosonic-compare.csv"));
}

TEST(Scenarios, EvolveUnitaryAndResolution) {
  Config u;
  u.set("modes", "2");
  EXPECT_TRUE(run_scenario("evolve-unitary", u, scratch("unitary"), 1).pass);
  Config r;
  r.set("modes", "1");
  EXPECT_TRUE(run_scenario("resolution", r, scratch("resolution"), 1).pass);
}

TEST(Scenarios, OutputIndependentOfThreadCount) {
  Config c;
  c.set("modes", "2");
  c.set("samples", "20000");
  c.set("k", "0");
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  run_scenario("volume", c, a, 1);
  run_scenario("volume", c, b, 3);
  EXPECT_EQ(slurp(a / "volume.json"), slurp(b / "volume.json"));
  EXPECT_EQ(slurp(a / "volume.csv"), slurp(b / "volume.csv"));
}

}  // namespace
}  // namespace fermiq::cli
