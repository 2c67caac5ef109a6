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

// Experiment runner.
//
//   fedgan run --config exp.json [--seed N] [--out DIR] [--scenario NAME]
//   fedgan validate --config exp.json [--scenario NAME]
//
// Exit codes: 0 success, 2 config error, 3 runtime error, 4 a scenario check
// failed.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "fedgan/cli/config.h"
#include "fedgan/cli/scenarios.h"

namespace {

using fedgan::cli::Scenario;

// Loads the config and prints diagnostics to stderr. Returns nullopt after
// printing when the config is unusable.
std::optional<fedgan::cli::ParsedConfig> Load(
    const std::string& path, const std::string& scenario_flag) {
  std::optional<Scenario> scenario;
  if (!scenario_flag.empty()) {
    absl::StatusOr<Scenario> parsed = fedgan::cli::ParseScenario(scenario_flag);
    if (!parsed.ok()) {
      std::cerr << "--scenario: " << parsed.status().message() << "\n";
      return std::nullopt;
    }
    scenario = *parsed;
  }
  absl::StatusOr<fedgan::cli::ParsedConfig> parsed =
      fedgan::cli::LoadConfig(path, scenario);
  if (!parsed.ok()) {
    std::cerr << path << ": " << parsed.status().message() << "\n";
    return std::nullopt;
  }
  for (const fedgan::cli::Diagnostic& d : parsed->diagnostics) {
    std::cerr << path << ": " << fedgan::cli::FormatDiagnostic(d) << "\n";
  }
  return *std::move(parsed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated GAN experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario_flag;
  std::optional<uint64_t> seed_flag;
  std::optional<std::string> out_flag;

  CLI::App* run = app.add_subcommand("run", "Run the scenario of a config");
  run->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--seed", seed_flag, "Overrides the config seed");
  run->add_option("--out", out_flag, "Output directory");
  run->add_option("--scenario", scenario_flag, "Overrides the config scenario");

  CLI::App* validate =
      app.add_subcommand("validate", "List every config violation");
  validate->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  validate->add_option("--scenario", scenario_flag,
                       "Overrides the config scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fedgan::cli::kExitOk : fedgan::cli::kExitConfigError;
  }

  std::optional<fedgan::cli::ParsedConfig> parsed =
      Load(config_path, scenario_flag);
  if (!parsed.has_value()) return fedgan::cli::kExitConfigError;

  if (validate->parsed()) {
    if (!parsed->diagnostics.empty()) return fedgan::cli::kExitConfigError;
    std::cout << config_path << ": ok\n";
    return fedgan::cli::kExitOk;
  }

  if (!parsed->diagnostics.empty()) return fedgan::cli::kExitConfigError;
  fedgan::cli::ExperimentConfig& config = parsed->config;
  if (seed_flag.has_value()) config.seed = *seed_flag;

  std::optional<std::string> root;
  if (const char* env = std::getenv(fedgan::cli::kOutputRootEnv)) root = env;
  const std::string out_dir =
      fedgan::cli::ResolveOutputDir(config, out_flag, root);

  absl::StatusOr<fedgan::cli::ScenarioReport> report =
      fedgan::cli::RunScenario(config, out_dir);
  if (!report.ok()) {
    std::cerr << "error: " << report.status().message() << "\n";
    return fedgan::cli::kExitRuntimeError;
  }
  for (const fedgan::cli::ScenarioCheck& check : report->checks) {
    std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
  }
  std::cout << "wrote " << report->files.size() << " files to " << out_dir
            << "\n";
  return report->AllPassed() ? fedgan::cli::kExitOk
                             : fedgan::cli::kExitCheckFailed;
}
