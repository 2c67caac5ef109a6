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

#ifndef FEDGAN_CLI_CONFIG_H_
#define FEDGAN_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/cli/experiments.h"
#include "fedgan/eval/classifier.h"
#include "fedgan/federation/federation.h"
#include "fedgan/privacy/dp.h"

namespace fedgan::cli {

enum class Scenario {
  kStandalone,
  kFedganCentral,
  kFedganBlockchain,
  kVerifyTheory,
  kBenchConsensus,
  kSweepMixing,
  kSweepEpsilon,
};

std::string_view ScenarioName(Scenario scenario);
absl::StatusOr<Scenario> ParseScenario(std::string_view name);

struct DatasetSection {
  // "gaussian-mixture" for the GAN scenarios; "toy-imbalanced", "darkcovid"
  // or "chestcovid" for the mixing sweep; "toy-blobs" for the epsilon sweep.
  std::string preset;
  int64_t real_samples = 100;
  int64_t reference_samples = 4000;
  int64_t generated_samples = 4000;
  int histogram_bins = 16;
  // Scale factor for the darkcovid and chestcovid class counts.
  double scale = 0.1;
  int64_t train_per_class = 100;
  int64_t test_per_class = 100;
};

struct ArchitectureSection {
  std::string preset = "toy";
  int hidden_units = 32;
};

struct MixingSection {
  std::vector<double> ratios = {0.0, 0.5, 1.0, 2.0, 3.0};
  bool per_class = true;
  int64_t real_train_size = 0;
  int seeds = 10;
};

struct EpsilonSection {
  std::vector<double> epsilons = {0.01, 0.05, 0.1, 0.3, 0.5};
  int64_t synthetic_per_class = 100;
  int seeds = 10;
};

// Defaults depend on the scenario: `federation` and `architecture` describe
// the shared GAN training for fedgan-* and standalone, the per-class DP-FedGAN
// for sweep-epsilon and the per-class single-client GANs for sweep-mixing.
// Sweeps run seeds seed, seed + 1, ....
struct ExperimentConfig {
  Scenario scenario = Scenario::kFedganCentral;
  uint64_t seed = 0;
  // Empty means "derive from the output root".
  std::string output_dir;
  DatasetSection dataset;
  ArchitectureSection architecture;
  federation::FederationConfig federation;
  std::optional<privacy::DpConfig> dp;
  std::optional<ConsensusSettings> consensus;
  eval::ClassifierConfig classifier;
  MixingSection mixing;
  EpsilonSection epsilon_sweep;
  TheorySpec theory;
};

// One violated invariant. `path` is a dotted path into the config, e.g.
// "consensus.latency_threshold_s" or "mixing.ratios[2]".
struct Diagnostic {
  std::string path;
  std::string message;
};

// The scenario's defaults for every section; dp and consensus stay unset.
ExperimentConfig DefaultConfig(Scenario scenario);

std::string FormatDiagnostic(const Diagnostic& diagnostic);

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<Diagnostic> diagnostics;
};

// Fails only when `text` is not a JSON object. Type errors, unknown keys and
// invariant violations are collected in `diagnostics`; fields that fail to
// read keep their defaults. `scenario_override` replaces the "scenario"
// field, and defaults follow the effective scenario.
absl::StatusOr<ParsedConfig> ParseConfig(
    std::string_view text,
    std::optional<Scenario> scenario_override = std::nullopt);

// Checks every invariant of an already-built config, including the sections
// the scenario requires.
std::vector<Diagnostic> ValidateConfig(const ExperimentConfig& config);

// Reads and parses `path`.
absl::StatusOr<ParsedConfig> LoadConfig(
    const std::string& path,
    std::optional<Scenario> scenario_override = std::nullopt);

// Canonical JSON for a config; every field is written, so the result parses
// back to an identical config.
std::string ConfigToJson(const ExperimentConfig& config);

}  // namespace fedgan::cli

#endif  // FEDGAN_CLI_CONFIG_H_
