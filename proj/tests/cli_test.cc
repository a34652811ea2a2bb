// Copyright 2026 The spdevops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "json.hpp"
#include "spdevops/nffg_json.h"

namespace spdevops {
namespace {

namespace fs = std::filesystem;

const std::string kFixtures = SPDEVOPS_FIXTURES_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::Main(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ =
        fs::temp_directory_path() /
        ("spdevops_cli_" +
         std::string(
             ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  // Every regular file under `d`, by relative path.
  static std::map<std::string, std::string> Files(const fs::path& d) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(d)) {
      if (e.is_regular_file()) {
        out[fs::relative(e.path(), d).string()] = ReadFile(e.path().string());
      }
    }
    return out;
  }

  fs::path dir_;
};

TEST_F(CliTest, NoArgumentsIsUsage) {
  Result r = Cli({});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("Usage:"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"verify"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"opex", "--scenario", "pessimistic"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"--format", "xml", "opex"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"oracle", "a", "b", "--bits", "9"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"troubleshoot", "x.tsg"}).code, cli::kUsage);
}

TEST_F(CliTest, HelpIsOk) {
  Result r = Cli({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("troubleshoot"), std::string::npos);
}

TEST_F(CliTest, VerifyPassingFixture) {
  Result r = Cli({"--format", "json", "verify", kFixtures + "/vcpe.nffg.json",
                  kFixtures + "/policies.json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["verdicts"].size(), 6u);
  for (const auto& v : j["verdicts"]) EXPECT_TRUE(v["holds"].get<bool>());
  EXPECT_EQ(j["timing"]["reachability"]["count"], 3);
}

TEST_F(CliTest, VerifyFailingPolicyExitsOne) {
  Result r = Cli({"verify", kFixtures + "/vcpe_deny.nffg.json",
                  kFixtures + "/policies.json"});
  EXPECT_EQ(r.code, cli::kFailed);
  EXPECT_NE(r.out.find("FAIL reach_mail"), std::string::npos);
  EXPECT_EQ(Cli({"verify", kFixtures + "/vcpe_deny.nffg.json",
                 kFixtures + "/deny_policies.json"})
                .code,
            cli::kOk);
}

TEST_F(CliTest, FileErrorsExitThree) {
  EXPECT_EQ(
      Cli({"verify", Path("missing.json"), kFixtures + "/policies.json"}).code,
      cli::kBadInput);
  std::ofstream(Path("broken.json")) << "{ not json";
  EXPECT_EQ(Cli({"extract", Path("broken.json")}).code, cli::kBadInput);
  std::ofstream(Path("bad.cfg")) << "capacity = lots\n";
  EXPECT_EQ(Cli({"run", Path("bad.cfg")}).code, cli::kBadInput);
  std::ofstream(Path("bad.tsg")) << "node a = widget\n";
  EXPECT_EQ(Cli({"troubleshoot", Path("bad.tsg"), "--snapshot",
                 kFixtures + "/snapshots/balanced_static.json"})
                .code,
            cli::kBadInput);
  std::ofstream(Path("model.json"))
      << R"({"categories": [{"name": "x", "share": 3}]})";
  EXPECT_EQ(Cli({"opex", "--model", Path("model.json")}).code, cli::kBadInput);
}

TEST_F(CliTest, ExtractPrintsThreeChains) {
  Result r =
      Cli({"--format", "json", "extract", kFixtures + "/vcpe.nffg.json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 3u);
}

TEST_F(CliTest, RunRejectedDeploymentExitsOne) {
  Result r =
      Cli({"--out", Path("deny"), "run", kFixtures + "/scenarios/deny.cfg"});
  EXPECT_EQ(r.code, cli::kFailed);
  EXPECT_NE(r.err.find("deployment rejected"), std::string::npos);
}

TEST_F(CliTest, RunIsDeterministic) {
  const std::string cfg = kFixtures + "/scenarios/ramp.cfg";
  Result a = Cli({"run", cfg, "--seed", "5", "--out", Path("a")});
  Result b = Cli({"run", cfg, "--seed", "5", "--out", Path("b")});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  ASSERT_EQ(b.code, cli::kOk) << b.err;
  auto fa = Files(Path("a"));
  auto fb = Files(Path("b"));
  EXPECT_EQ(fa.size(), 5u);
  EXPECT_TRUE(fa.count("snapshot.json"));
  EXPECT_EQ(fa, fb);
  Result c = Cli({"run", cfg, "--seed", "6", "--out", Path("c")});
  EXPECT_NE(Files(Path("c")).at("timeseries.csv"), fa.at("timeseries.csv"));
}

TEST_F(CliTest, TroubleshootSnapshot) {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"balanced_growing", "hypothesis rejected"},
      {"balanced_static", "debug ControlApp"},
      {"imbalanced_growing", "debug LoadBalancer"},
      {"imbalanced_static", "debug LoadBalancer"},
  };
  for (const auto& [name, verdict] : expected) {
    Result r = Cli({"--format", "json", "troubleshoot",
                    kFixtures + "/elastic_firewall.tsg", "--snapshot",
                    kFixtures + "/snapshots/" + name + ".json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], verdict) << name;
  }
}

TEST_F(CliTest, TroubleshootRunErrorExitsOne) {
  std::ofstream(Path("t.tsg")) << "node a = tool teleport()\n"
                                  "node s = sink \"s\"\nedge a -> s\n";
  EXPECT_EQ(Cli({"troubleshoot", Path("t.tsg"), "--snapshot",
                 kFixtures + "/snapshots/balanced_static.json"})
                .code,
            cli::kFailed);
}

TEST_F(CliTest, OpexScenarios) {
  Result r = Cli({"--format", "json", "opex"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["overall_addressable"], 0.8);
  r = Cli({"--format", "json", "opex", "--scenario", "conservative"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["overall_addressable"], 0.3);
}

TEST_F(CliTest, OracleAgrees) {
  Result r = Cli({"oracle", kFixtures + "/vcpe.nffg.json",
                  kFixtures + "/policies.json", "--bits", "8"});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_NE(r.out.find("0 mismatches"), std::string::npos);
}

// Every subcommand that writes reports writes the same bytes twice.
TEST_F(CliTest, ReportFilesAreDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", kFixtures + "/vcpe.nffg.json", kFixtures + "/policies.json"},
      {"extract", kFixtures + "/vcpe.nffg.json"},
      {"run", kFixtures + "/troubleshoot/balanced_growing.cfg"},
      {"troubleshoot", kFixtures + "/elastic_firewall.tsg", "--snapshot",
       kFixtures + "/snapshots/imbalanced_static.json"},
      {"opex"},
      {"oracle", kFixtures + "/vcpe.nffg.json", kFixtures + "/policies.json"},
  };
  int i = 0;
  for (auto cmd : commands) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* tag : {"x", "y"}) {
      auto args = cmd;
      std::string out = Path(std::to_string(i) + tag);
      args.insert(args.end(), {"--seed", "3", "--out", out});
      ASSERT_EQ(Cli(args).code, cli::kOk) << cmd[0];
      runs.push_back(Files(out));
    }
    EXPECT_FALSE(runs[0].empty()) << cmd[0];
    EXPECT_EQ(runs[0], runs[1]) << cmd[0];
    ++i;
  }
}

// The checked-in snapshots are what `run` produces for the checked-in
// configs.
TEST_F(CliTest, SnapshotFixturesAreCurrent) {
  for (const char* name : {"balanced_growing", "balanced_static",
                           "imbalanced_growing", "imbalanced_static"}) {
    ASSERT_EQ(Cli({"run", kFixtures + "/troubleshoot/" + name + ".cfg", "--out",
                   Path(name)})
                  .code,
              cli::kOk);
    EXPECT_EQ(ReadFile(Path(name) + "/snapshot.json"),
              ReadFile(kFixtures + "/snapshots/" + name + ".json"))
        << name;
  }
}

}  // namespace
}  // namespace spdevops
