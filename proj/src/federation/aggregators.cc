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

#include "fedgan/federation/aggregators.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "fedgan/nn/checkpoint.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::federation {

absl::StatusOr<nn::NetworkParameters> Aggregate(
    std::span<const nn::NetworkParameters> params) {
  if (params.empty()) {
    return absl::InvalidArgumentError("nothing to aggregate");
  }
  nn::NetworkParameters mean = params.front();
  for (size_t n = 1; n < params.size(); ++n) {
    if (!params[n].SameShape(mean)) {
      return absl::InvalidArgumentError(
          absl::StrCat("parameter set ", n, " differs in shape from set 0"));
    }
    for (size_t l = 0; l < mean.num_layers(); ++l) {
      mean.mutable_layers()[l].weight += params[n].layer(l).weight;
      mean.mutable_layers()[l].bias += params[n].layer(l).bias;
    }
  }
  const double count = static_cast<double>(params.size());
  for (nn::Layer& layer : mean.mutable_layers()) {
    layer.weight /= count;
    layer.bias /= count;
  }
  return mean;
}

namespace {

absl::StatusOr<AggregateResult> AverageUpdates(
    const std::vector<ClientUpdate>& updates) {
  std::vector<nn::NetworkParameters> discs, gens;
  discs.reserve(updates.size());
  gens.reserve(updates.size());
  for (const ClientUpdate& u : updates) {
    discs.push_back(u.disc);
    gens.push_back(u.gen);
  }
  AggregateResult result;
  ASSIGN_OR_RETURN(result.disc, Aggregate(discs));
  ASSIGN_OR_RETURN(result.gen, Aggregate(gens));
  return result;
}

}  // namespace

absl::StatusOr<AggregateResult> CentralAggregator::Combine(
    int round, const std::vector<ClientUpdate>& updates) {
  return AverageUpdates(updates);
}

std::vector<uint8_t> EncodeUpdate(const nn::NetworkParameters& disc,
                                  const nn::NetworkParameters& gen) {
  std::vector<uint8_t> out = nn::EncodeParameters(disc);
  std::vector<uint8_t> g = nn::EncodeParameters(gen);
  out.insert(out.end(), g.begin(), g.end());
  return out;
}

absl::StatusOr<ClientUpdate> DecodeUpdate(std::string client_id,
                                          std::span<const uint8_t> payload) {
  ClientUpdate update;
  update.client_id = std::move(client_id);
  size_t offset = 0;
  ASSIGN_OR_RETURN(update.disc, nn::DecodeParametersAt(payload, offset));
  ASSIGN_OR_RETURN(update.gen, nn::DecodeParametersAt(payload, offset));
  if (offset != payload.size()) {
    return absl::DataLossError("trailing bytes after client update");
  }
  return update;
}

BlockchainAggregator::BlockchainAggregator(
    std::vector<chain::MinerProfile> miners, chain::ConsensusParams params,
    RngStream rng, std::map<std::string, chain::VotePolicy> honesty)
    : miners_(std::move(miners)),
      params_(params),
      rng_(std::move(rng)),
      honesty_(std::move(honesty)) {}

absl::StatusOr<AggregateResult> BlockchainAggregator::Combine(
    int round, const std::vector<ClientUpdate>& updates) {
  std::vector<chain::Transaction> pending;
  pending.reserve(updates.size());
  for (const ClientUpdate& u : updates) {
    if (!registry_.Contains(u.client_id)) {
      RETURN_IF_ERROR(registry_.Register(u.client_id, rng_));
    }
    ASSIGN_OR_RETURN(chain::Transaction tx,
                     chain::MakeTransaction(registry_, u.client_id,
                                            EncodeUpdate(u.disc, u.gen),
                                            round));
    pending.push_back(std::move(tx));
  }
  ASSIGN_OR_RETURN(chain::RoundOutcome outcome,
                   chain::RunConsensusRound(std::move(pending), miners_,
                                            params_, rng_, registry_, ledger_,
                                            honesty_));

  // Rebuild the updates from what the ledger actually holds.
  ASSIGN_OR_RETURN(chain::Block block, ledger_.BlockAt(outcome.block.height));
  std::vector<ClientUpdate> from_chain;
  from_chain.reserve(block.transactions.size());
  for (const chain::Transaction& tx : block.transactions) {
    ASSIGN_OR_RETURN(ClientUpdate u, DecodeUpdate(tx.sender, tx.payload));
    from_chain.push_back(std::move(u));
  }
  ASSIGN_OR_RETURN(AggregateResult result, AverageUpdates(from_chain));
  result.block_height = block.height;
  result.por_latency_s = outcome.por_latency_s;
  result.dpos_latency_s = outcome.dpos_latency_s;
  return result;
}

}  // namespace fedgan::federation
