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

#ifndef FEDGAN_FEDERATION_AGGREGATORS_H_
#define FEDGAN_FEDERATION_AGGREGATORS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/chain/consensus.h"
#include "fedgan/chain/digest.h"
#include "fedgan/chain/ledger.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::federation {

// Elementwise mean (1/N) sum_n theta_n of every weight and bias. The sum runs
// in input order.
absl::StatusOr<nn::NetworkParameters> Aggregate(
    std::span<const nn::NetworkParameters> params);

struct ClientUpdate {
  std::string client_id;
  nn::NetworkParameters disc;
  nn::NetworkParameters gen;
};

struct AggregateResult {
  nn::NetworkParameters disc;
  nn::NetworkParameters gen;
  // Set when the update passed through a ledger.
  std::optional<int64_t> block_height;
  double por_latency_s = 0.0;
  double dpos_latency_s = 0.0;
};

class Aggregator {
 public:
  virtual ~Aggregator() = default;
  virtual absl::StatusOr<AggregateResult> Combine(
      int round, const std::vector<ClientUpdate>& updates) = 0;
};

// Averages in place, as a cloud server would.
class CentralAggregator : public Aggregator {
 public:
  absl::StatusOr<AggregateResult> Combine(
      int round, const std::vector<ClientUpdate>& updates) override;
};

// Each client submits its (disc, gen) pair as a signed transaction; a
// reputation-elected committee verifies the block, and once it is on the
// ledger every participant decodes the updates from the block and averages
// them locally.
class BlockchainAggregator : public Aggregator {
 public:
  BlockchainAggregator(std::vector<chain::MinerProfile> miners,
                       chain::ConsensusParams params, RngStream rng,
                       std::map<std::string, chain::VotePolicy> honesty = {});

  absl::StatusOr<AggregateResult> Combine(
      int round, const std::vector<ClientUpdate>& updates) override;

  const chain::Ledger& ledger() const { return ledger_; }
  chain::Ledger& mutable_ledger() { return ledger_; }
  const chain::KeyRegistry& registry() const { return registry_; }
  const std::vector<chain::MinerProfile>& miners() const { return miners_; }

 private:
  std::vector<chain::MinerProfile> miners_;
  chain::ConsensusParams params_;
  RngStream rng_;
  std::map<std::string, chain::VotePolicy> honesty_;
  chain::KeyRegistry registry_;
  chain::Ledger ledger_;
};

// Transaction payload: the discriminator checkpoint followed by the
// generator checkpoint.
std::vector<uint8_t> EncodeUpdate(const nn::NetworkParameters& disc,
                                  const nn::NetworkParameters& gen);
absl::StatusOr<ClientUpdate> DecodeUpdate(std::string client_id,
                                          std::span<const uint8_t> payload);

}  // namespace fedgan::federation

#endif  // FEDGAN_FEDERATION_AGGREGATORS_H_
