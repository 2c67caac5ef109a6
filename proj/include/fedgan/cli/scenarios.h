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

#ifndef FEDGAN_CLI_SCENARIOS_H_
#define FEDGAN_CLI_SCENARIOS_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/cli/config.h"

namespace fedgan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;
inline constexpr int kExitCheckFailed = 4;

// Environment variable naming the default output root.
inline constexpr char kOutputRootEnv[] = "FEDGAN_OUT_ROOT";

struct ScenarioCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ScenarioReport {
  // Paths relative to the output directory, in write order.
  std::vector<std::string> files;
  std::vector<ScenarioCheck> checks;

  bool AllPassed() const;
};

// `out_flag` if set, else config.output_dir if non-empty, else
// <output_root>/<scenario>-seed<seed> where output_root defaults to
// "fedgan-out".
std::string ResolveOutputDir(const ExperimentConfig& config,
                             const std::optional<std::string>& out_flag,
                             const std::optional<std::string>& output_root);

// Runs a validated config and writes its artifacts plus manifest.json under
// `output_dir`, creating it when needed. Every file name is fixed by the
// scenario; nothing is written elsewhere.
absl::StatusOr<ScenarioReport> RunScenario(const ExperimentConfig& config,
                                           const std::string& output_dir);

// The training class counts the mixing sweep uses for `dataset`.
absl::StatusOr<std::vector<int64_t>> MixingTrainCounts(
    const DatasetSection& dataset);

}  // namespace fedgan::cli

#endif  // FEDGAN_CLI_SCENARIOS_H_
