// Copyright 2026 The FedGAN Lab Authors
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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fedgan/cli/config.h"
#include "fedgan/cli/experiments.h"
#include "fedgan/cli/scenarios.h"
#include "fedgan/util/io.h"

namespace fedgan::cli {
namespace {

std::vector<std::string> Paths(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> paths;
  for (const Diagnostic& d : diagnostics) paths.push_back(d.path);
  return paths;
}

ParsedConfig Parse(const std::string& text) {
  auto parsed = ParseConfig(text);
  EXPECT_TRUE(parsed.ok()) << parsed.status();
  return parsed.ok() ? *parsed : ParsedConfig{};
}

std::string FreshDir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::path(::testing::TempDir()) / ("fedgan_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::set<std::string> FilesUnder(const std::string& dir) {
  std::set<std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files.insert(std::filesystem::relative(entry.path(), dir).string());
    }
  }
  return files;
}

TEST(ScenarioNameTest, RoundTrips) {
  for (Scenario s :
       {Scenario::kStandalone, Scenario::kFedganCentral,
        Scenario::kFedganBlockchain, Scenario::kVerifyTheory,
        Scenario::kBenchConsensus, Scenario::kSweepMixing,
        Scenario::kSweepEpsilon}) {
    EXPECT_EQ(ParseScenario(ScenarioName(s)).value(), s);
  }
  EXPECT_FALSE(ParseScenario("fedgan").ok());
}

TEST(ValidateTest, MinimalConfigsHaveNoDiagnostics) {
  EXPECT_TRUE(Parse(R"({"scenario": "verify-theory"})").diagnostics.empty());
  EXPECT_TRUE(Parse(R"({"scenario": "fedgan-central"})").diagnostics.empty());
  EXPECT_TRUE(
      Parse(R"({"scenario": "bench-consensus", "consensus": {}})")
          .diagnostics.empty());
  EXPECT_TRUE(Parse(R"({"scenario": "sweep-mixing"})").diagnostics.empty());
  EXPECT_TRUE(Parse(R"({"scenario": "sweep-epsilon"})").diagnostics.empty());
}

TEST(ValidateTest, MissingConsensusSectionIsNamed) {
  const ParsedConfig parsed = Parse(R"({"scenario": "bench-consensus"})");
  ASSERT_EQ(parsed.diagnostics.size(), 1u);
  EXPECT_EQ(parsed.diagnostics[0].path, "consensus");
  EXPECT_NE(parsed.diagnostics[0].message.find("bench-consensus"),
            std::string::npos);
  EXPECT_EQ(Paths(Parse(R"({"scenario": "fedgan-blockchain"})").diagnostics),
            std::vector<std::string>{"consensus"});
}

TEST(ValidateTest, NonPositiveTauCitesConsensusInvariant) {
  for (const char* tau : {"0", "-1"}) {
    const ParsedConfig parsed =
        Parse(std::string(R"({"scenario": "bench-consensus", "consensus": )") +
              R"({"latency_threshold_s": )" + tau + "}}");
    ASSERT_EQ(parsed.diagnostics.size(), 1u) << tau;
    EXPECT_EQ(parsed.diagnostics[0].path, "consensus.latency_threshold_s");
    EXPECT_NE(parsed.diagnostics[0].message.find("ConsensusParams"),
              std::string::npos);
  }
}

TEST(ValidateTest, ListsEveryViolation) {
  const ParsedConfig parsed = Parse(R"({
    "scenario": "fedgan-central",
    "federation": {"num_clients": 0, "learning_rate": -1},
    "dp": {"epsilon": 0, "delta": 2},
    "mixing": {"ratios": [0, -1]},
    "colour": "blue"
  })");
  const std::vector<std::string> paths = Paths(parsed.diagnostics);
  const std::set<std::string> got(paths.begin(), paths.end());
  for (const char* expected :
       {"colour", "federation.num_clients", "federation.learning_rate",
        "dp.epsilon", "dp.delta", "mixing.ratios[1]"}) {
    EXPECT_TRUE(got.contains(expected)) << expected;
  }
}

TEST(ValidateTest, TypeErrorsAndPresets) {
  const ParsedConfig parsed = Parse(R"({
    "scenario": "sweep-mixing",
    "seed": "seven",
    "dataset": {"preset": "imagenet"},
    "architecture": {"preset": "full-scale"},
    "federation": {"global_rounds": 2.5, "generator_loss": "hinge"},
    "classifier": []
  })");
  const std::vector<std::string> paths = Paths(parsed.diagnostics);
  const std::set<std::string> got(paths.begin(), paths.end());
  for (const char* expected :
       {"seed", "dataset.preset", "architecture.preset",
        "federation.global_rounds", "federation.generator_loss",
        "classifier"}) {
    EXPECT_TRUE(got.contains(expected)) << expected;
  }
}

TEST(ValidateTest, MissingOrUnknownScenario) {
  EXPECT_EQ(Paths(Parse("{}").diagnostics),
            std::vector<std::string>{"scenario"});
  EXPECT_EQ(Paths(Parse(R"({"scenario": "train"})").diagnostics),
            std::vector<std::string>{"scenario"});
  auto overridden = ParseConfig("{}", Scenario::kVerifyTheory);
  ASSERT_TRUE(overridden.ok());
  EXPECT_TRUE(overridden->diagnostics.empty());
  EXPECT_EQ(overridden->config.scenario, Scenario::kVerifyTheory);
}

TEST(ParseConfigTest, UnparseableInputIsAnError) {
  EXPECT_FALSE(ParseConfig("{scenario: ").ok());
  EXPECT_FALSE(ParseConfig("[1, 2]").ok());
  EXPECT_FALSE(LoadConfig(::testing::TempDir() + "/does_not_exist.json").ok());
}

TEST(ParseConfigTest, DefaultsFollowTheScenario) {
  const ExperimentConfig eps = Parse(R"({"scenario": "sweep-epsilon"})").config;
  EXPECT_EQ(eps.federation.hp.learning_rate, 0.002);
  EXPECT_EQ(eps.architecture.hidden_units, 8);
  EXPECT_EQ(eps.dataset.preset, "toy-blobs");
  const ExperimentConfig mix = Parse(R"({"scenario": "sweep-mixing"})").config;
  EXPECT_EQ(mix.federation.num_clients, 1);
  EXPECT_EQ(mix.federation.global_rounds, 200);
  const ExperimentConfig chain =
      Parse(R"({"scenario": "fedgan-blockchain", "consensus": {}})").config;
  EXPECT_EQ(chain.federation.aggregator,
            federation::AggregatorKind::kBlockchain);
}

TEST(ParseConfigTest, CanonicalJsonRoundTrips) {
  const ParsedConfig parsed = Parse(R"({
    "scenario": "fedgan-blockchain", "seed": 12,
    "federation": {"local_epochs": 3, "generator_loss": "non-saturating"},
    "dp": {"epsilon": 0.3, "explicit_noise_std": 0.5},
    "consensus": {"grid_kilobytes": [10, 20], "miners": 12}
  })");
  ASSERT_TRUE(parsed.diagnostics.empty());
  const std::string json = ConfigToJson(parsed.config);
  const ParsedConfig again = Parse(json);
  EXPECT_TRUE(again.diagnostics.empty());
  EXPECT_EQ(ConfigToJson(again.config), json);
  EXPECT_EQ(again.config.seed, 12u);
  EXPECT_EQ(again.config.dp->explicit_noise_std, 0.5);
  EXPECT_EQ(again.config.consensus->miners, 12);
}

TEST(ResolveOutputDirTest, Precedence) {
  ExperimentConfig config = DefaultConfig(Scenario::kVerifyTheory);
  config.seed = 4;
  EXPECT_EQ(ResolveOutputDir(config, std::nullopt, std::nullopt),
            "fedgan-out/verify-theory-seed4");
  EXPECT_EQ(ResolveOutputDir(config, std::nullopt, "/data"),
            "/data/verify-theory-seed4");
  config.output_dir = "mine";
  EXPECT_EQ(ResolveOutputDir(config, std::nullopt, "/data"), "mine");
  EXPECT_EQ(ResolveOutputDir(config, std::string("flag"), "/data"), "flag");
}

TEST(RunScenarioTest, VerifyTheoryPasses) {
  ExperimentConfig config = DefaultConfig(Scenario::kVerifyTheory);
  const std::string dir = FreshDir("theory");
  const auto report = RunScenario(config, dir);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_TRUE(report->AllPassed());
  EXPECT_EQ(report->checks.size(), 3u);
  const std::set<std::string> written(report->files.begin(),
                                      report->files.end());
  EXPECT_EQ(FilesUnder(dir), written);
}

TEST(RunScenarioTest, BenchConsensusIsByteDeterministic) {
  ExperimentConfig config = DefaultConfig(Scenario::kBenchConsensus);
  config.consensus.emplace();
  config.seed = 5;
  const std::string a = FreshDir("bench_a");
  const std::string b = FreshDir("bench_b");
  const auto first = RunScenario(config, a);
  const auto second = RunScenario(config, b);
  ASSERT_TRUE(first.ok() && second.ok());
  EXPECT_TRUE(first->AllPassed());
  ASSERT_EQ(first->files, second->files);
  EXPECT_EQ(FilesUnder(a).size(), first->files.size());
  for (const std::string& file : first->files) {
    EXPECT_EQ(ReadTextFile(a + "/" + file).value(),
              ReadTextFile(b + "/" + file).value())
        << file;
  }
  const std::string csv = ReadTextFile(a + "/latency.csv").value();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "block_kb,miners,por_s,dpos_s");
}

TEST(RunScenarioTest, SmallFederatedRunIsDeterministic) {
  ExperimentConfig config = DefaultConfig(Scenario::kFedganBlockchain);
  config.consensus.emplace();
  config.federation.global_rounds = 2;
  config.federation.hp.local_epochs = 1;
  config.dataset.reference_samples = 200;
  config.dataset.generated_samples = 200;
  const std::string a = FreshDir("fed_a");
  const std::string b = FreshDir("fed_b");
  const auto first = RunScenario(config, a);
  const auto second = RunScenario(config, b);
  ASSERT_TRUE(first.ok()) << first.status();
  ASSERT_TRUE(second.ok());
  for (const std::string& file : first->files) {
    EXPECT_EQ(ReadTextFile(a + "/" + file).value(),
              ReadTextFile(b + "/" + file).value())
        << file;
  }
  const std::set<std::string> files(first->files.begin(), first->files.end());
  for (const char* expected : {"loss_trace.csv", "jsd.csv", "chain.jsonl",
                               "round_latency.csv", "manifest.json"}) {
    EXPECT_TRUE(files.contains(expected)) << expected;
  }
  EXPECT_EQ(first->checks.front().name, "ledger_verified");
  EXPECT_TRUE(first->checks.front().passed);
}

TEST(RunScenarioTest, RefusesInvalidConfigAndUnwritableDirectory) {
  ExperimentConfig config = DefaultConfig(Scenario::kBenchConsensus);
  EXPECT_FALSE(RunScenario(config, FreshDir("invalid")).ok());

  const std::string blocker = FreshDir("blocker");
  ASSERT_TRUE(WriteTextFile(blocker, "not a directory").ok());
  config = DefaultConfig(Scenario::kVerifyTheory);
  EXPECT_FALSE(RunScenario(config, blocker + "/sub").ok());
}

TEST(MixingTrainCountsTest, Presets) {
  DatasetSection dataset;
  dataset.preset = "toy-imbalanced";
  EXPECT_EQ(MixingTrainCounts(dataset).value(),
            (std::vector<int64_t>{15, 50, 50}));
  dataset.preset = "darkcovid";
  dataset.scale = 0.1;
  EXPECT_EQ(MixingTrainCounts(dataset).value(),
            (std::vector<int64_t>{15, 23, 24}));
  dataset.preset = "mnist";
  EXPECT_FALSE(MixingTrainCounts(dataset).ok());
}

TEST(MedianTest, OddAndEven) {
  EXPECT_EQ(Median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(Median({4.0, 1.0, 3.0, 2.0}), 2.5);
}

}  // namespace
}  // namespace fedgan::cli
