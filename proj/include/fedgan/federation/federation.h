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

#ifndef FEDGAN_FEDERATION_FEDERATION_H_
#define FEDGAN_FEDERATION_FEDERATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedgan/federation/aggregators.h"
#include "fedgan/nn/gan.h"
#include "fedgan/nn/network.h"
#include "fedgan/nn/presets.h"
#include "fedgan/privacy/dp.h"
#include "fedgan/util/rng.h"

namespace fedgan::federation {

struct ClientState {
  std::string client_id;
  nn::Matrix shard;
  nn::NetworkParameters disc;
  nn::NetworkParameters gen;
  RngStream rng{0};
  std::optional<privacy::DpConfig> dp;
};

enum class AggregatorKind { kCentral, kBlockchain };

std::string_view AggregatorName(AggregatorKind kind);
absl::StatusOr<AggregatorKind> ParseAggregatorKind(std::string_view name);

struct FederationConfig {
  int num_clients = 5;
  int global_rounds = 50;
  nn::TrainingHyperparams hp;
  AggregatorKind aggregator = AggregatorKind::kCentral;

  absl::Status Validate() const;
};

struct RoundRecord {
  // 1-based.
  int round = 0;
  nn::NetworkParameters global_disc;
  nn::NetworkParameters global_gen;
  std::map<std::string, std::vector<nn::EpochLoss>> client_traces;
  std::optional<int64_t> block_height;
  double por_latency_s = 0.0;
  double dpos_latency_s = 0.0;
};

// Random permutation split into n shards whose sizes differ by at most one;
// the first (size mod n) shards take the extra row.
absl::StatusOr<std::vector<nn::Matrix>> PartitionIid(const nn::Matrix& dataset,
                                                     int n, RngStream& rng);

// One client per shard, ids "client-<i>". All clients start from the same
// networks, drawn from a stream forked off `seed`; client i trains with
// stream Fork(i + 1) of the same seed.
absl::StatusOr<std::vector<ClientState>> MakeClients(
    const std::vector<nn::Matrix>& shards, const nn::GanArchitecture& arch,
    uint64_t seed, const std::optional<privacy::DpConfig>& dp = std::nullopt);

// Runs T global rounds. The initial global networks are those of the first
// client. Every round each client runs LocalUpdate from the current globals
// and the aggregator combines the results into the next globals. With a
// DpConfig, a client's discriminator steps go through the DP updater; the
// generator never reads client data and trains with plain SGD. A failing
// client or a rejected block aborts the run with an error naming the round.
absl::StatusOr<std::vector<RoundRecord>> RunTraining(
    const FederationConfig& config, std::vector<ClientState>& clients,
    Aggregator& aggregator);

// Pushes `count` noise vectors through the generator.
absl::StatusOr<nn::Matrix> GenerateSynthetic(const nn::NetworkParameters& gen,
                                             RngStream& rng, int64_t count);

struct LabeledSamples {
  nn::Matrix features;
  std::vector<int> labels;
};

// Draws counts[c] samples from generators[c] and labels them c.
absl::StatusOr<LabeledSamples> GenerateSyntheticPerClass(
    const std::vector<nn::NetworkParameters>& generators,
    const std::vector<int64_t>& counts, RngStream& rng);

}  // namespace fedgan::federation

#endif  // FEDGAN_FEDERATION_FEDERATION_H_
