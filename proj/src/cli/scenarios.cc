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

#include "fedgan/cli/scenarios.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <system_error>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "fedgan/chain/export.h"
#include "fedgan/cli/experiments.h"
#include "fedgan/eval/datasets.h"
#include "fedgan/eval/mixing.h"
#include "fedgan/federation/history.h"
#include "fedgan/privacy/dp.h"
#include "fedgan/util/format.h"
#include "fedgan/util/io.h"
#include "fedgan/util/status_macros.h"
#include "nlohmann/json.hpp"

namespace fedgan::cli {
namespace {

using nlohmann::ordered_json;

constexpr double kIdentityTolerance = 1e-10;
constexpr double kMatchedTolerance = 1e-12;

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, ScenarioReport* report)
      : dir_(std::move(dir)), report_(report) {}

  absl::Status Write(const std::string& name, const std::string& text) {
    RETURN_IF_ERROR(WriteTextFile((dir_ / name).string(), text));
    report_->files.push_back(name);
    return absl::OkStatus();
  }

 private:
  std::filesystem::path dir_;
  ScenarioReport* report_;
};

void AddCheck(ScenarioReport* report, std::string name, bool passed,
              std::string detail) {
  report->checks.push_back({std::move(name), passed, std::move(detail)});
}

// Prefixes every line of a CSV with `column` (header) or `value` (rows).
std::string PrefixCsv(const std::string& csv, std::string_view column,
                      std::string_view value, bool with_header) {
  std::string out;
  bool header = true;
  for (const std::string& line :
       std::vector<std::string>(absl::StrSplit(csv, '\n', absl::SkipEmpty()))) {
    if (header) {
      header = false;
      if (with_header) absl::StrAppend(&out, std::string(column), ",", line, "\n");
      continue;
    }
    absl::StrAppend(&out, std::string(value), ",", line, "\n");
  }
  return out;
}

int64_t MaxShardRows(int64_t rows, int clients) {
  return (rows + clients - 1) / clients;
}

int64_t DpStepsPerClient(const federation::FederationConfig& f,
                         int64_t shard_rows) {
  const int64_t batches =
      (shard_rows + f.hp.minibatch_size - 1) / f.hp.minibatch_size;
  return static_cast<int64_t>(f.global_rounds) * f.hp.local_epochs * batches;
}

absl::Status RunGanScenario(const ExperimentConfig& config,
                            ArtifactWriter& writer, ScenarioReport* report,
                            ordered_json* manifest) {
  FedComparisonSpec spec = DefaultFedComparisonSpec();
  spec.real_samples = config.dataset.real_samples;
  spec.reference_samples = config.dataset.reference_samples;
  spec.generated_samples = config.dataset.generated_samples;
  spec.histogram_bins = config.dataset.histogram_bins;
  spec.hidden_units = config.architecture.hidden_units;
  spec.federation = config.federation;
  spec.dp = config.dp;
  if (config.consensus.has_value()) spec.consensus = *config.consensus;
  spec.run_fedgan = config.scenario != Scenario::kStandalone;
  ASSIGN_OR_RETURN(FedComparisonResult result,
                   RunFedComparison(spec, config.seed));

  std::string jsd = "model,jsd\n";
  if (spec.run_fedgan) {
    RETURN_IF_ERROR(writer.Write("loss_trace.csv",
                                 federation::HistoryCsv(result.fedgan_history)));
    absl::StrAppend(&jsd, "fedgan,", FormatDouble(result.fedgan_jsd), "\n");
  }
  for (size_t i = 0; i < result.standalone_histories.size(); ++i) {
    RETURN_IF_ERROR(writer.Write(
        absl::StrCat("standalone_loss_trace_", i, ".csv"),
        federation::HistoryCsv(result.standalone_histories[i])));
    absl::StrAppend(&jsd, "standalone-", i, ",",
                    FormatDouble(result.standalone_jsd[i]), "\n");
  }
  RETURN_IF_ERROR(writer.Write("jsd.csv", jsd));

  if (result.chain_json_lines.has_value()) {
    RETURN_IF_ERROR(writer.Write("chain.jsonl", *result.chain_json_lines));
    std::string rounds = "round,block_height,por_s,dpos_s\n";
    for (const federation::RoundRecord& r : result.fedgan_history) {
      absl::StrAppend(&rounds, r.round, ",", r.block_height.value_or(-1), ",",
                      FormatDouble(r.por_latency_s), ",",
                      FormatDouble(r.dpos_latency_s), "\n");
    }
    RETURN_IF_ERROR(writer.Write("round_latency.csv", rounds));
    AddCheck(report, "ledger_verified", result.chain_check->ok,
             result.chain_check->reason);
  }

  // Noise changes what the comparison measures, so it is only a check for
  // runs without DP; jsd.csv records it either way.
  if (spec.run_fedgan && !config.dp.has_value()) {
    const double best = result.BestStandaloneJsd();
    AddCheck(report, "fedgan_not_worse_than_best_standalone",
             result.fedgan_jsd <= best,
             absl::StrCat("fedgan ", FormatDouble(result.fedgan_jsd),
                          ", best standalone ", FormatDouble(best)));
  } else if (!spec.run_fedgan) {
    bool finite = true;
    for (double v : result.standalone_jsd) finite = finite && std::isfinite(v);
    AddCheck(report, "standalone_jsd_finite", finite, "");
  }
  if (config.dp.has_value()) {
    const int64_t rows =
        MaxShardRows(config.dataset.real_samples, config.federation.num_clients);
    const int64_t steps = DpStepsPerClient(config.federation, rows);
    (*manifest)["dp"] = {
        {"noise_std", privacy::NoiseStdFromEpsilon(*config.dp)},
        {"steps_per_client", steps},
        {"naive_composed_epsilon",
         privacy::NaiveComposedEpsilon(*config.dp, steps)}};
  }
  return absl::OkStatus();
}

absl::Status RunTheoryScenario(const ExperimentConfig& config,
                               ArtifactWriter& writer,
                               ScenarioReport* report) {
  ASSIGN_OR_RETURN(TheoryReport theory,
                   RunTheoryChecks(config.theory, config.seed));
  ordered_json j;
  j["pairs"] = theory.pairs;
  j["max_support"] = config.theory.max_support;
  j["standalone_identity"] = {{"max_error", theory.max_identity_error},
                              {"tolerance", kIdentityTolerance}};
  j["matched_optimum"] = {{"max_error", theory.max_matched_error},
                          {"tolerance", kMatchedTolerance}};
  ordered_json federated = ordered_json::array();
  double max_federated = 0.0;
  for (size_t n = 0; n < theory.federated_errors.size(); ++n) {
    federated.push_back(
        {{"clients", n + 1}, {"error", theory.federated_errors[n]}});
    max_federated = std::max(max_federated, theory.federated_errors[n]);
  }
  j["federated_optimum"] = {{"tolerance", kMatchedTolerance},
                            {"by_clients", federated}};
  RETURN_IF_ERROR(writer.Write("theory_report.json", j.dump(2) + "\n"));

  AddCheck(report, "value_at_optimal_discriminator_is_minus_ln4_plus_2jsd",
           theory.max_identity_error <= kIdentityTolerance,
           absl::StrCat("max error ", FormatDouble(theory.max_identity_error)));
  AddCheck(report, "matched_optimum_is_minus_ln4",
           theory.max_matched_error <= kMatchedTolerance,
           absl::StrCat("max error ", FormatDouble(theory.max_matched_error)));
  AddCheck(report, "federated_optimum_is_minus_n_ln4",
           max_federated <= kMatchedTolerance,
           absl::StrCat("max error ", FormatDouble(max_federated)));
  return absl::OkStatus();
}

absl::Status RunConsensusScenario(const ExperimentConfig& config,
                                  ArtifactWriter& writer,
                                  ScenarioReport* report) {
  ASSIGN_OR_RETURN(ConsensusBench bench,
                   RunConsensusBench(*config.consensus, config.seed));
  RETURN_IF_ERROR(writer.Write("latency.csv", chain::LatencyCsv(bench.rows)));
  RETURN_IF_ERROR(writer.Write("chain.jsonl", bench.chain_json_lines));

  // Rows are compared in increasing block size.
  std::vector<chain::LatencyRow> rows = bench.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     return a.block_kb < b.block_kb;
                   });
  bool below = true;
  bool widening = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    below = below && rows[i].por_s < rows[i].dpos_s;
    if (i > 0) {
      widening = widening && rows[i].dpos_s - rows[i].por_s >=
                                 rows[i - 1].dpos_s - rows[i - 1].por_s;
    }
  }
  AddCheck(report, "por_below_dpos", below, "");
  AddCheck(report, "gap_non_decreasing_in_block_size", widening, "");
  AddCheck(report, "ledger_verified", bench.chain_check.ok,
           bench.chain_check.reason);
  return absl::OkStatus();
}

absl::Status RunMixingScenario(const ExperimentConfig& config,
                               ArtifactWriter& writer,
                               ScenarioReport* report) {
  MixingSpec spec = DefaultMixingSpec();
  ASSIGN_OR_RETURN(spec.train_counts, MixingTrainCounts(config.dataset));
  spec.test_per_class = config.dataset.test_per_class;
  spec.ratios = config.mixing.ratios;
  spec.per_class = config.mixing.per_class;
  spec.real_train_size = config.mixing.real_train_size;
  spec.hidden_units = config.architecture.hidden_units;
  spec.gan = config.federation;
  spec.classifier = config.classifier;

  const size_t cells = spec.ratios.size();
  std::vector<std::vector<double>> accuracy(cells), macro_f1(cells);
  std::string table;
  for (int i = 0; i < config.mixing.seeds; ++i) {
    const uint64_t seed = config.seed + i;
    ASSIGN_OR_RETURN(std::vector<eval::MixingRow> rows, RunMixing(spec, seed));
    absl::StrAppend(&table, PrefixCsv(eval::MixingCsv(rows), "seed",
                                      absl::StrCat(seed), i == 0));
    for (size_t c = 0; c < cells; ++c) {
      accuracy[c].push_back(rows[c].metrics.accuracy);
      macro_f1[c].push_back(rows[c].metrics.MacroF1());
      if (i == 0) {
        RETURN_IF_ERROR(
            writer.Write(absl::StrCat("confusion_cell_", c, ".csv"),
                         eval::ConfusionCsv(rows[c].metrics.confusion)));
      }
    }
  }
  RETURN_IF_ERROR(writer.Write("mixing.csv", table));

  std::string summary = "ratio,median_accuracy,median_macro_f1\n";
  std::vector<double> median(cells);
  for (size_t c = 0; c < cells; ++c) {
    median[c] = Median(accuracy[c]);
    absl::StrAppend(&summary, FormatDouble(spec.ratios[c]), ",",
                    FormatDouble(median[c]), ",",
                    FormatDouble(Median(macro_f1[c])), "\n");
  }
  RETURN_IF_ERROR(writer.Write("mixing_summary.csv", summary));

  auto zero = std::find(spec.ratios.begin(), spec.ratios.end(), 0.0);
  if (zero != spec.ratios.end()) {
    const double baseline = median[zero - spec.ratios.begin()];
    bool beaten = false;
    for (size_t c = 0; c < cells; ++c) {
      beaten = beaten || (spec.ratios[c] > 0.0 && median[c] > baseline);
    }
    AddCheck(report, "some_ratio_beats_real_only", beaten,
             absl::StrCat("real-only median accuracy ",
                          FormatDouble(baseline)));
  }
  return absl::OkStatus();
}

absl::Status RunEpsilonScenario(const ExperimentConfig& config,
                                ArtifactWriter& writer,
                                ScenarioReport* report) {
  EpsilonSweepSpec spec = DefaultEpsilonSweepSpec();
  spec.epsilons = config.epsilon_sweep.epsilons;
  spec.train_per_class = config.dataset.train_per_class;
  spec.test_per_class = config.dataset.test_per_class;
  spec.synthetic_per_class = config.epsilon_sweep.synthetic_per_class;
  spec.hidden_units = config.architecture.hidden_units;
  spec.federation = config.federation;
  if (config.dp.has_value()) spec.dp = *config.dp;
  spec.classifier = config.classifier;

  const size_t cells = spec.epsilons.size();
  std::vector<std::vector<double>> utility(cells);
  std::vector<int> diverged(cells, 0);
  std::string table = "seed,epsilon,noise_std,diverged,macro_f1,accuracy\n";
  for (int i = 0; i < config.epsilon_sweep.seeds; ++i) {
    const uint64_t seed = config.seed + i;
    ASSIGN_OR_RETURN(std::vector<EpsilonCell> row,
                     RunEpsilonSweep(spec, seed));
    for (size_t c = 0; c < cells; ++c) {
      absl::StrAppend(&table, seed, ",", FormatDouble(row[c].epsilon), ",",
                      FormatDouble(row[c].noise_std), ",",
                      row[c].diverged ? 1 : 0, ",",
                      FormatDouble(row[c].macro_f1), ",",
                      FormatDouble(row[c].accuracy), "\n");
      utility[c].push_back(row[c].macro_f1);
      diverged[c] += row[c].diverged ? 1 : 0;
    }
  }
  RETURN_IF_ERROR(writer.Write("epsilon.csv", table));

  std::vector<std::pair<double, double>> medians;
  std::string summary = "epsilon,median_macro_f1,diverged_runs\n";
  for (size_t c = 0; c < cells; ++c) {
    const double m = Median(utility[c]);
    medians.emplace_back(spec.epsilons[c], m);
    absl::StrAppend(&summary, FormatDouble(spec.epsilons[c]), ",",
                    FormatDouble(m), ",", diverged[c], "\n");
  }
  RETURN_IF_ERROR(writer.Write("epsilon_summary.csv", summary));

  std::stable_sort(medians.begin(), medians.end());
  bool monotone = true;
  for (size_t c = 1; c < medians.size(); ++c) {
    monotone = monotone && medians[c].second >= medians[c - 1].second;
  }
  AddCheck(report, "median_utility_non_decreasing_in_epsilon", monotone, "");
  return absl::OkStatus();
}

}  // namespace

bool ScenarioReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ScenarioCheck& c) { return c.passed; });
}

std::string ResolveOutputDir(const ExperimentConfig& config,
                             const std::optional<std::string>& out_flag,
                             const std::optional<std::string>& output_root) {
  if (out_flag.has_value()) return *out_flag;
  if (!config.output_dir.empty()) return config.output_dir;
  const std::filesystem::path root =
      output_root.has_value() && !output_root->empty() ? *output_root
                                                       : "fedgan-out";
  return (root / absl::StrCat(std::string(ScenarioName(config.scenario)), "-seed",
                              config.seed))
      .string();
}

absl::StatusOr<std::vector<int64_t>> MixingTrainCounts(
    const DatasetSection& dataset) {
  if (dataset.preset == "toy-imbalanced") {
    return DefaultMixingSpec().train_counts;
  }
  ASSIGN_OR_RETURN(eval::ClassCountPreset preset,
                   eval::ClassCountPresetByName(dataset.preset));
  return eval::ScaleCounts(preset.original, dataset.scale);
}

absl::StatusOr<ScenarioReport> RunScenario(const ExperimentConfig& config,
                                           const std::string& output_dir) {
  std::vector<Diagnostic> diagnostics = ValidateConfig(config);
  if (!diagnostics.empty()) {
    return absl::InvalidArgumentError(FormatDiagnostic(diagnostics.front()));
  }
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec || !std::filesystem::is_directory(output_dir)) {
    return absl::PermissionDeniedError(absl::StrCat(
        "cannot create output directory ", output_dir, ": ", ec.message()));
  }

  ScenarioReport report;
  ArtifactWriter writer(output_dir, &report);
  ordered_json manifest;
  manifest["scenario"] = ScenarioName(config.scenario);
  manifest["seed"] = config.seed;
  switch (config.scenario) {
    case Scenario::kStandalone:
    case Scenario::kFedganCentral:
    case Scenario::kFedganBlockchain:
      RETURN_IF_ERROR(RunGanScenario(config, writer, &report, &manifest));
      break;
    case Scenario::kVerifyTheory:
      RETURN_IF_ERROR(RunTheoryScenario(config, writer, &report));
      break;
    case Scenario::kBenchConsensus:
      RETURN_IF_ERROR(RunConsensusScenario(config, writer, &report));
      break;
    case Scenario::kSweepMixing:
      RETURN_IF_ERROR(RunMixingScenario(config, writer, &report));
      break;
    case Scenario::kSweepEpsilon:
      RETURN_IF_ERROR(RunEpsilonScenario(config, writer, &report));
      break;
  }

  manifest["files"] = report.files;
  ordered_json checks = ordered_json::array();
  for (const ScenarioCheck& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  manifest["checks"] = checks;
  manifest["config"] = ordered_json::parse(ConfigToJson(config));
  RETURN_IF_ERROR(writer.Write("manifest.json", manifest.dump(2) + "\n"));
  return report;
}

}  // namespace fedgan::cli
