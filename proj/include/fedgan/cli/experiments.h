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

#ifndef FEDGAN_CLI_EXPERIMENTS_H_
#define FEDGAN_CLI_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/chain/consensus.h"
#include "fedgan/chain/export.h"
#include "fedgan/eval/classifier.h"
#include "fedgan/eval/metrics.h"
#include "fedgan/eval/mixing.h"
#include "fedgan/federation/federation.h"
#include "fedgan/privacy/dp.h"

namespace fedgan::cli {

// Consensus settings for blockchain aggregation and the latency benchmark.
// ConsensusParams are derived from these by ConsensusParamsFor().
struct ConsensusSettings {
  double latency_threshold_s = 1.0;
  double broadcast_coeff = 0.5;
  // Block size used by blockchain aggregation, in KB.
  double block_kilobytes = 500.0;
  double result_kilobytes = 50.0;
  double cycles_per_kb = chain::kDefaultCyclesPerKb;
  int partition_count = 10;
  int committee_size = 10;
  double approval_threshold = 0.51;
  // Size of the miner roster the committee is elected from.
  int miners = 10;
  // Latency benchmark grid, in KB.
  std::vector<double> grid_kilobytes = {50,  100, 150, 200, 250,
                                        300, 350, 400, 450, 500};
  int transactions_per_block = 10;
};

// B = block_kilobytes * 8 kb split into K equal parts, Phi^B = cycles_per_kb *
// B, with the other fields copied.
chain::ConsensusParams ConsensusParamsFor(const ConsensusSettings& settings,
                                          double block_kilobytes);

// FedGAN against per-shard standalone GANs on the default 2-D mixture.
struct FedComparisonSpec {
  int64_t real_samples = 100;
  // Fresh samples from the true mixture that stand in for "real" in the JSD.
  int64_t reference_samples = 4000;
  int64_t generated_samples = 4000;
  int histogram_bins = 16;
  int hidden_units = 32;
  federation::FederationConfig federation;
  std::optional<privacy::DpConfig> dp;
  // Used when federation.aggregator is kBlockchain.
  ConsensusSettings consensus;
  bool run_fedgan = true;
  bool run_standalone = true;
};

// N = 5, T = 50, L = 10, k = 8, lr = 0.05.
FedComparisonSpec DefaultFedComparisonSpec();

struct FedComparisonResult {
  // NaN when the federated arm is skipped.
  double fedgan_jsd = 0.0;
  // One entry per shard; empty when skipped.
  std::vector<double> standalone_jsd;
  std::vector<federation::RoundRecord> fedgan_history;
  std::vector<std::vector<federation::RoundRecord>> standalone_histories;
  // Set for blockchain aggregation.
  std::optional<std::string> chain_json_lines;
  std::optional<chain::ChainCheck> chain_check;

  double BestStandaloneJsd() const;
};

absl::StatusOr<FedComparisonResult> RunFedComparison(
    const FedComparisonSpec& spec, uint64_t seed);

// Per-class DP-FedGAN generators feeding a classifier trained only on
// synthetic data; utility is its macro-F1 on real test data.
struct EpsilonSweepSpec {
  std::vector<double> epsilons = {0.01, 0.05, 0.1, 0.3, 0.5};
  int64_t train_per_class = 100;
  int64_t test_per_class = 100;
  int64_t synthetic_per_class = 100;
  int hidden_units = 8;
  federation::FederationConfig federation;
  // epsilon is overwritten per cell.
  privacy::DpConfig dp;
  eval::ClassifierConfig classifier;
};

// N = 5, T = 50, L = 10, k = 8, lr = 0.002, C = 1; classifier 100 epochs at
// the toy learning rate.
EpsilonSweepSpec DefaultEpsilonSweepSpec();

struct EpsilonCell {
  double epsilon = 0.0;
  // Training produced non-finite parameters; utility is then 0.
  bool diverged = false;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  double noise_std = 0.0;
};

absl::StatusOr<std::vector<EpsilonCell>> RunEpsilonSweep(
    const EpsilonSweepSpec& spec, uint64_t seed);

// Per-class standalone GANs augmenting an imbalanced real training set.
struct MixingSpec {
  std::vector<int64_t> train_counts = {15, 50, 50};
  int64_t test_per_class = 100;
  std::vector<double> ratios = {0.0, 0.5, 1.0, 2.0, 3.0};
  bool per_class = true;
  int64_t real_train_size = 0;
  int hidden_units = 16;
  // One client, T = 200, L = 1, k = 8, lr = 0.05 by default.
  federation::FederationConfig gan;
  eval::ClassifierConfig classifier;
};

MixingSpec DefaultMixingSpec();

absl::StatusOr<std::vector<eval::MixingRow>> RunMixing(const MixingSpec& spec,
                                                       uint64_t seed);

struct TheorySpec {
  int64_t pairs = 10000;
  int max_support = 8;
  int max_clients = 10;
};

struct TheoryReport {
  int64_t pairs = 0;
  // max |V(D*, G) - (-ln 4 + 2 JSD)| over the random pairs.
  double max_identity_error = 0.0;
  // max |V(D*, G) + ln 4| with p_g = p_d.
  double max_matched_error = 0.0;
  // |federated optimum + N ln 4| for N = 1..max_clients.
  std::vector<double> federated_errors;
};

absl::StatusOr<TheoryReport> RunTheoryChecks(const TheorySpec& spec,
                                             uint64_t seed);

// One consensus round per grid point on a fresh ledger, each block carrying
// transactions_per_block equal-size signed transactions.
struct ConsensusBench {
  std::vector<chain::LatencyRow> rows;
  std::string chain_json_lines;
  chain::ChainCheck chain_check;
};

absl::StatusOr<ConsensusBench> RunConsensusBench(
    const ConsensusSettings& settings, uint64_t seed);

// Median of a non-empty sample; the mean of the two middle values for even
// sizes.
double Median(std::vector<double> values);

}  // namespace fedgan::cli

#endif  // FEDGAN_CLI_EXPERIMENTS_H_
