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

#include "fedgan/cli/experiments.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/divergence/divergence.h"
#include "fedgan/eval/datasets.h"
#include "fedgan/eval/empirical.h"
#include "fedgan/federation/aggregators.h"
#include "fedgan/nn/presets.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::cli {
namespace {

// Class count of the toy blob datasets.
constexpr int kToyClasses = 3;

nn::GanArchitecture ToyArchitecture(const nn::TrainingHyperparams& hp,
                                    int hidden_units) {
  return nn::ToyGanArchitecture(2, hp.noise_dim, hidden_units);
}

federation::FederationConfig ToyFederation(double learning_rate,
                                           int local_epochs) {
  federation::FederationConfig config;
  config.num_clients = 5;
  config.global_rounds = 50;
  config.hp.local_epochs = local_epochs;
  config.hp.minibatch_size = 8;
  config.hp.learning_rate = learning_rate;
  return config;
}

absl::StatusOr<double> GeneratorJsd(const nn::NetworkParameters& gen,
                                    const nn::Matrix& reference,
                                    const FedComparisonSpec& spec,
                                    const RngStream& root) {
  RngStream rng = root.Fork(200);
  ASSIGN_OR_RETURN(nn::Matrix samples,
                   federation::GenerateSynthetic(gen, rng,
                                                 spec.generated_samples));
  return eval::EmpiricalJsd(reference, samples, spec.histogram_bins);
}

std::vector<int64_t> Repeat(int64_t value, int times) {
  return std::vector<int64_t>(times, value);
}

// Masses drawn uniformly and normalized; roughly one entry in five is zeroed
// so that disjoint supports are exercised.
divergence::DiscreteDistribution RandomDistribution(RngStream& rng,
                                                    size_t size) {
  std::vector<double> masses(size);
  double total = 0.0;
  for (double& m : masses) {
    m = rng.Uniform(0.0, 1.0) < 0.2 ? 0.0 : rng.Uniform(0.0, 1.0);
    total += m;
  }
  if (total == 0.0) {
    masses[rng.UniformIndex(size)] = 1.0;
    total = 1.0;
  }
  for (double& m : masses) m /= total;
  auto dist = divergence::DiscreteDistribution::Create(masses);
  return dist.ok() ? *std::move(dist)
                   : divergence::DiscreteDistribution::Uniform(size);
}

}  // namespace

chain::ConsensusParams ConsensusParamsFor(const ConsensusSettings& settings,
                                          double block_kilobytes) {
  chain::ConsensusParams p;
  p.latency_threshold_s = settings.latency_threshold_s;
  p.broadcast_coeff = settings.broadcast_coeff;
  p.partition_count = settings.partition_count;
  p.committee_size = settings.committee_size;
  p.approval_threshold = settings.approval_threshold;
  p.block_kb = block_kilobytes * chain::kKilobitsPerKilobyte;
  p.block_result_kb = settings.result_kilobytes * chain::kKilobitsPerKilobyte;
  p.part_kb = p.block_kb / p.partition_count;
  p.part_result_kb = p.block_result_kb / p.partition_count;
  p.block_cycles = settings.cycles_per_kb * p.block_kb;
  p.part_cycles = p.block_cycles / p.partition_count;
  return p;
}

double FedComparisonResult::BestStandaloneJsd() const {
  if (standalone_jsd.empty()) return std::nan("");
  return *std::min_element(standalone_jsd.begin(), standalone_jsd.end());
}

FedComparisonSpec DefaultFedComparisonSpec() {
  FedComparisonSpec spec;
  spec.federation = ToyFederation(0.05, 10);
  return spec;
}

absl::StatusOr<FedComparisonResult> RunFedComparison(
    const FedComparisonSpec& spec, uint64_t seed) {
  RETURN_IF_ERROR(spec.federation.Validate());
  const RngStream root(seed);
  RngStream data = root.Fork(100);
  const eval::GaussianMixture mixture = eval::DefaultGaussianMixture();
  ASSIGN_OR_RETURN(nn::Matrix real, mixture.Sample(data, spec.real_samples));
  ASSIGN_OR_RETURN(nn::Matrix reference,
                   mixture.Sample(data, spec.reference_samples));
  ASSIGN_OR_RETURN(std::vector<nn::Matrix> shards,
                   federation::PartitionIid(
                       real, spec.federation.num_clients, data));
  const nn::GanArchitecture arch =
      ToyArchitecture(spec.federation.hp, spec.hidden_units);

  FedComparisonResult result;
  result.fedgan_jsd = std::nan("");
  if (spec.run_fedgan) {
    ASSIGN_OR_RETURN(std::vector<federation::ClientState> clients,
                     federation::MakeClients(shards, arch, seed, spec.dp));
    if (spec.federation.aggregator == federation::AggregatorKind::kBlockchain) {
      RngStream roster_rng = root.Fork(300);
      federation::BlockchainAggregator aggregator(
          chain::RandomMinerRoster(roster_rng, spec.consensus.miners,
                                   spec.consensus.latency_threshold_s),
          ConsensusParamsFor(spec.consensus, spec.consensus.block_kilobytes),
          root.Fork(301));
      ASSIGN_OR_RETURN(result.fedgan_history,
                       federation::RunTraining(spec.federation, clients,
                                               aggregator));
      ASSIGN_OR_RETURN(result.chain_json_lines,
                       chain::ChainToJsonLines(aggregator.ledger()));
      result.chain_check = aggregator.ledger().Verify(&aggregator.registry());
    } else {
      federation::CentralAggregator aggregator;
      ASSIGN_OR_RETURN(result.fedgan_history,
                       federation::RunTraining(spec.federation, clients,
                                               aggregator));
    }
    ASSIGN_OR_RETURN(result.fedgan_jsd,
                     GeneratorJsd(result.fedgan_history.back().global_gen,
                                  reference, spec, root));
  }
  if (!spec.run_standalone) return result;

  federation::FederationConfig single = spec.federation;
  single.num_clients = 1;
  single.aggregator = federation::AggregatorKind::kCentral;
  for (const nn::Matrix& shard : shards) {
    ASSIGN_OR_RETURN(std::vector<federation::ClientState> clients,
                     federation::MakeClients({shard}, arch, seed, spec.dp));
    federation::CentralAggregator aggregator;
    ASSIGN_OR_RETURN(std::vector<federation::RoundRecord> history,
                     federation::RunTraining(single, clients, aggregator));
    ASSIGN_OR_RETURN(double jsd, GeneratorJsd(history.back().global_gen,
                                              reference, spec, root));
    result.standalone_jsd.push_back(jsd);
    result.standalone_histories.push_back(std::move(history));
  }
  return result;
}

EpsilonSweepSpec DefaultEpsilonSweepSpec() {
  EpsilonSweepSpec spec;
  spec.federation = ToyFederation(0.002, 10);
  spec.dp.clip_norm = 1.0;
  spec.classifier.epochs = 100;
  spec.classifier.learning_rate = eval::kToyClassifierLearningRate;
  return spec;
}

absl::StatusOr<std::vector<EpsilonCell>> RunEpsilonSweep(
    const EpsilonSweepSpec& spec, uint64_t seed) {
  RETURN_IF_ERROR(spec.federation.Validate());
  const RngStream root(seed);
  RngStream data = root.Fork(1);
  const std::vector<int64_t> train_counts =
      Repeat(spec.train_per_class, kToyClasses);
  const std::vector<int64_t> test_counts =
      Repeat(spec.test_per_class, kToyClasses);
  ASSIGN_OR_RETURN(eval::LabeledDataset train,
                   eval::MakeBlobs(train_counts, data));
  ASSIGN_OR_RETURN(eval::LabeledDataset test,
                   eval::MakeBlobs(test_counts, data));
  const nn::GanArchitecture arch =
      ToyArchitecture(spec.federation.hp, spec.hidden_units);

  std::vector<EpsilonCell> cells;
  for (double epsilon : spec.epsilons) {
    privacy::DpConfig dp = spec.dp;
    dp.epsilon = epsilon;
    RETURN_IF_ERROR(dp.Validate());
    EpsilonCell cell;
    cell.epsilon = epsilon;
    cell.noise_std = privacy::NoiseStdFromEpsilon(dp);

    std::vector<nn::NetworkParameters> generators;
    for (int c = 0; c < kToyClasses && !cell.diverged; ++c) {
      RngStream partition = root.Fork(10 + c);
      ASSIGN_OR_RETURN(std::vector<nn::Matrix> shards,
                       federation::PartitionIid(train.ClassSamples(c),
                                                spec.federation.num_clients,
                                                partition));
      ASSIGN_OR_RETURN(std::vector<federation::ClientState> clients,
                       federation::MakeClients(shards, arch, seed * 10 + c,
                                               dp));
      federation::CentralAggregator aggregator;
      absl::StatusOr<std::vector<federation::RoundRecord>> history =
          federation::RunTraining(spec.federation, clients, aggregator);
      if (history.status().code() == absl::StatusCode::kOutOfRange) {
        cell.diverged = true;
        break;
      }
      RETURN_IF_ERROR(history.status());
      generators.push_back(history->back().global_gen);
    }
    if (!cell.diverged) {
      RngStream synth_rng = root.Fork(50);
      ASSIGN_OR_RETURN(
          federation::LabeledSamples synthetic,
          federation::GenerateSyntheticPerClass(
              generators, Repeat(spec.synthetic_per_class, kToyClasses),
              synth_rng));
      if (!synthetic.features.allFinite()) {
        cell.diverged = true;
      } else {
        eval::LabeledDataset synthetic_train{synthetic.features,
                                             synthetic.labels, kToyClasses};
        RngStream trainer = root.Fork(60);
        ASSIGN_OR_RETURN(nn::NetworkParameters net,
                         eval::TrainClassifier(synthetic_train,
                                               spec.classifier, trainer));
        ASSIGN_OR_RETURN(eval::ClassMetrics metrics, eval::Evaluate(net, test));
        cell.macro_f1 = metrics.MacroF1();
        cell.accuracy = metrics.accuracy;
      }
    }
    cells.push_back(cell);
  }
  return cells;
}

MixingSpec DefaultMixingSpec() {
  MixingSpec spec;
  spec.gan.num_clients = 1;
  spec.gan.global_rounds = 200;
  spec.gan.hp.local_epochs = 1;
  spec.gan.hp.minibatch_size = 8;
  spec.gan.hp.learning_rate = 0.05;
  spec.classifier.epochs = 100;
  spec.classifier.learning_rate = eval::kToyClassifierLearningRate;
  return spec;
}

absl::StatusOr<std::vector<eval::MixingRow>> RunMixing(const MixingSpec& spec,
                                                       uint64_t seed) {
  RETURN_IF_ERROR(spec.gan.Validate());
  if (spec.gan.num_clients != 1) {
    return absl::InvalidArgumentError("class generators train on one client");
  }
  const int classes = static_cast<int>(spec.train_counts.size());
  const RngStream root(seed);
  RngStream data = root.Fork(1);
  ASSIGN_OR_RETURN(eval::LabeledDataset train,
                   eval::MakeBlobs(spec.train_counts, data));
  ASSIGN_OR_RETURN(eval::LabeledDataset test,
                   eval::MakeBlobs(Repeat(spec.test_per_class, classes), data));
  const nn::GanArchitecture arch =
      ToyArchitecture(spec.gan.hp, spec.hidden_units);

  std::vector<nn::NetworkParameters> generators;
  for (int c = 0; c < classes; ++c) {
    ASSIGN_OR_RETURN(std::vector<federation::ClientState> clients,
                     federation::MakeClients({train.ClassSamples(c)}, arch,
                                             seed * 10 + c));
    federation::CentralAggregator aggregator;
    ASSIGN_OR_RETURN(std::vector<federation::RoundRecord> history,
                     federation::RunTraining(spec.gan, clients, aggregator));
    generators.push_back(history.back().global_gen);
  }
  eval::MixingSweepConfig sweep;
  for (double ratio : spec.ratios) sweep.cells.push_back({ratio, spec.per_class});
  sweep.classifier = spec.classifier;
  sweep.real_train_size = spec.real_train_size;
  return eval::MixingSweep(train, test, generators, sweep, seed);
}

absl::StatusOr<TheoryReport> RunTheoryChecks(const TheorySpec& spec,
                                             uint64_t seed) {
  if (spec.pairs < 1 || spec.max_support < 1 || spec.max_clients < 1) {
    return absl::InvalidArgumentError(
        "pairs, max_support and max_clients must be >= 1");
  }
  const double ln4 = 2.0 * std::numbers::ln2;
  RngStream rng(seed);
  TheoryReport report;
  report.pairs = spec.pairs;
  for (int64_t i = 0; i < spec.pairs; ++i) {
    const size_t size = 1 + rng.UniformIndex(spec.max_support);
    divergence::DiscreteDistribution real = RandomDistribution(rng, size);
    divergence::DiscreteDistribution gen = RandomDistribution(rng, size);
    ASSIGN_OR_RETURN(divergence::DiscriminatorVector disc,
                     divergence::OptimalDiscriminator(real, gen));
    ASSIGN_OR_RETURN(double optimum,
                     divergence::ValueFunction(real, gen, disc));
    ASSIGN_OR_RETURN(double jsd, divergence::JensenShannon(real, gen));
    report.max_identity_error = std::max(
        report.max_identity_error, std::abs(optimum - (-ln4 + 2.0 * jsd)));
    ASSIGN_OR_RETURN(divergence::DiscriminatorVector half,
                     divergence::OptimalDiscriminator(real, real));
    ASSIGN_OR_RETURN(double matched,
                     divergence::ValueFunction(real, real, half));
    report.max_matched_error =
        std::max(report.max_matched_error, std::abs(matched + ln4));
  }
  for (int n = 1; n <= spec.max_clients; ++n) {
    std::vector<divergence::DistributionPair> pairs;
    for (int k = 0; k < n; ++k) {
      divergence::DiscreteDistribution p =
          RandomDistribution(rng, 1 + rng.UniformIndex(spec.max_support));
      pairs.emplace_back(p, p);
    }
    ASSIGN_OR_RETURN(double value, divergence::FederatedOptimum(pairs));
    report.federated_errors.push_back(std::abs(value + n * ln4));
  }
  return report;
}

absl::StatusOr<ConsensusBench> RunConsensusBench(
    const ConsensusSettings& settings, uint64_t seed) {
  if (settings.transactions_per_block < 1) {
    return absl::InvalidArgumentError("transactions_per_block must be >= 1");
  }
  const RngStream root(seed);
  RngStream roster_rng = root.Fork(1);
  std::vector<chain::MinerProfile> miners = chain::RandomMinerRoster(
      roster_rng, settings.miners, settings.latency_threshold_s);
  chain::KeyRegistry registry;
  RngStream key_rng = root.Fork(2);
  std::vector<std::string> senders;
  for (int i = 0; i < settings.transactions_per_block; ++i) {
    senders.push_back(absl::StrCat("client-", i));
    RETURN_IF_ERROR(registry.Register(senders.back(), key_rng));
  }
  RngStream consensus_rng = root.Fork(3);
  RngStream payload_rng = root.Fork(4);
  chain::Ledger ledger;

  ConsensusBench bench;
  for (size_t g = 0; g < settings.grid_kilobytes.size(); ++g) {
    const double block_kb = settings.grid_kilobytes[g];
    const chain::ConsensusParams params = ConsensusParamsFor(settings, block_kb);
    RETURN_IF_ERROR(params.Validate());
    const auto payload_bytes = static_cast<size_t>(std::llround(
        block_kb * 1000.0 / settings.transactions_per_block));
    std::vector<chain::Transaction> pending;
    for (const std::string& sender : senders) {
      std::vector<uint8_t> payload(payload_bytes);
      for (uint8_t& b : payload) b = static_cast<uint8_t>(payload_rng.NextU64());
      ASSIGN_OR_RETURN(chain::Transaction tx,
                       chain::MakeTransaction(registry, sender,
                                              std::move(payload),
                                              static_cast<int64_t>(g)));
      pending.push_back(std::move(tx));
    }
    ASSIGN_OR_RETURN(chain::RoundOutcome outcome,
                     chain::RunConsensusRound(std::move(pending), miners,
                                              params, consensus_rng, registry,
                                              ledger));
    bench.rows.push_back({block_kb, outcome.verification.committee_size,
                          outcome.por_latency_s, outcome.dpos_latency_s});
  }
  ASSIGN_OR_RETURN(bench.chain_json_lines, chain::ChainToJsonLines(ledger));
  bench.chain_check = ledger.Verify(&registry);
  return bench;
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n == 0) return std::nan("");
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace fedgan::cli
