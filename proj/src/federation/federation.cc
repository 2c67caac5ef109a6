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

#include "fedgan/federation/federation.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::federation {

std::string_view AggregatorName(AggregatorKind kind) {
  return kind == AggregatorKind::kBlockchain ? "blockchain" : "central";
}

absl::StatusOr<AggregatorKind> ParseAggregatorKind(std::string_view name) {
  if (name == "central") return AggregatorKind::kCentral;
  if (name == "blockchain") return AggregatorKind::kBlockchain;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown aggregator \"", std::string(name),
      "\" (expected central or blockchain)"));
}

absl::Status FederationConfig::Validate() const {
  if (num_clients < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("num_clients must be >= 1, got ", num_clients));
  }
  if (global_rounds < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("global_rounds must be >= 1, got ", global_rounds));
  }
  return hp.Validate();
}

absl::StatusOr<std::vector<nn::Matrix>> PartitionIid(const nn::Matrix& dataset,
                                                     int n, RngStream& rng) {
  if (n < 1) return absl::InvalidArgumentError("shard count must be >= 1");
  const int64_t rows = dataset.rows();
  if (rows < n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot split ", rows, " samples across ", n, " clients"));
  }
  std::vector<int64_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<nn::Matrix> shards;
  shards.reserve(n);
  int64_t next = 0;
  for (int s = 0; s < n; ++s) {
    const int64_t size = rows / n + (s < rows % n ? 1 : 0);
    nn::Matrix shard(size, dataset.cols());
    for (int64_t i = 0; i < size; ++i) shard.row(i) = dataset.row(order[next++]);
    shards.push_back(std::move(shard));
  }
  return shards;
}

absl::StatusOr<std::vector<ClientState>> MakeClients(
    const std::vector<nn::Matrix>& shards, const nn::GanArchitecture& arch,
    uint64_t seed, const std::optional<privacy::DpConfig>& dp) {
  if (dp.has_value()) RETURN_IF_ERROR(dp->Validate());
  const RngStream root(seed);
  RngStream init = root.Fork(0);
  ASSIGN_OR_RETURN(nn::NetworkParameters disc,
                   nn::NetworkParameters::Initialize(arch.discriminator, init));
  ASSIGN_OR_RETURN(nn::NetworkParameters gen,
                   nn::NetworkParameters::Initialize(arch.generator, init));
  std::vector<ClientState> clients;
  clients.reserve(shards.size());
  for (size_t i = 0; i < shards.size(); ++i) {
    ClientState c;
    c.client_id = absl::StrCat("client-", i);
    c.shard = shards[i];
    c.disc = disc;
    c.gen = gen;
    c.rng = root.Fork(i + 1);
    c.dp = dp;
    clients.push_back(std::move(c));
  }
  return clients;
}

namespace {

// Stream id offset for per-round DP noise, kept clear of the client ids.
constexpr uint64_t kDpNoiseStream = 0x44500000;

absl::Status CheckClients(const FederationConfig& config,
                          const std::vector<ClientState>& clients) {
  if (static_cast<int>(clients.size()) != config.num_clients) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", config.num_clients, " clients, got ",
                     clients.size()));
  }
  for (size_t i = 0; i < clients.size(); ++i) {
    const ClientState& c = clients[i];
    for (size_t j = 0; j < i; ++j) {
      if (clients[j].client_id == c.client_id) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate client id ", c.client_id));
      }
    }
    if (c.shard.rows() == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("client ", c.client_id, " has an empty shard"));
    }
    if (!c.disc.SameShape(clients[0].disc) || !c.gen.SameShape(clients[0].gen)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "client ", c.client_id, " networks differ in shape from ",
          clients[0].client_id));
    }
    if (c.dp.has_value()) RETURN_IF_ERROR(c.dp->Validate());
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<RoundRecord>> RunTraining(
    const FederationConfig& config, std::vector<ClientState>& clients,
    Aggregator& aggregator) {
  RETURN_IF_ERROR(config.Validate());
  RETURN_IF_ERROR(CheckClients(config, clients));

  nn::NetworkParameters global_disc = clients.front().disc;
  nn::NetworkParameters global_gen = clients.front().gen;
  std::vector<RoundRecord> history;
  history.reserve(config.global_rounds);
  for (int t = 1; t <= config.global_rounds; ++t) {
    RoundRecord record;
    record.round = t;
    std::vector<ClientUpdate> updates;
    updates.reserve(clients.size());
    for (ClientState& client : clients) {
      absl::StatusOr<nn::LocalUpdateResult> local;
      if (client.dp.has_value()) {
        RngStream noise = client.rng.Fork(kDpNoiseStream + t);
        local = nn::LocalUpdate(client.shard, global_disc, global_gen,
                                config.hp, client.rng,
                                privacy::DpUpdater(*client.dp, noise));
      } else {
        local = nn::LocalUpdate(client.shard, global_disc, global_gen,
                                config.hp, client.rng);
      }
      if (!local.ok()) {
        return absl::Status(
            local.status().code(),
            absl::StrCat("round ", t, ", client ", client.client_id, ": ",
                         local.status().message()));
      }
      client.disc = local->disc;
      client.gen = local->gen;
      record.client_traces[client.client_id] = std::move(local->trace);
      updates.push_back({client.client_id, std::move(local->disc),
                         std::move(local->gen)});
    }
    absl::StatusOr<AggregateResult> combined = aggregator.Combine(t, updates);
    if (!combined.ok()) {
      return absl::Status(combined.status().code(),
                          absl::StrCat("round ", t, " aggregation failed: ",
                                       combined.status().message()));
    }
    global_disc = combined->disc;
    global_gen = combined->gen;
    record.global_disc = std::move(combined->disc);
    record.global_gen = std::move(combined->gen);
    record.block_height = combined->block_height;
    record.por_latency_s = combined->por_latency_s;
    record.dpos_latency_s = combined->dpos_latency_s;
    history.push_back(std::move(record));
  }
  return history;
}

absl::StatusOr<nn::Matrix> GenerateSynthetic(const nn::NetworkParameters& gen,
                                             RngStream& rng, int64_t count) {
  return nn::GenerateSamples(gen, rng, count);
}

absl::StatusOr<LabeledSamples> GenerateSyntheticPerClass(
    const std::vector<nn::NetworkParameters>& generators,
    const std::vector<int64_t>& counts, RngStream& rng) {
  if (generators.size() != counts.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(generators.size(), " generators but ", counts.size(),
                     " class counts"));
  }
  if (generators.empty()) {
    return absl::InvalidArgumentError("no class generators");
  }
  const int64_t dim = generators.front().output_dim();
  int64_t total = 0;
  for (size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 0) {
      return absl::InvalidArgumentError("class counts must be >= 0");
    }
    if (generators[c].output_dim() != dim) {
      return absl::InvalidArgumentError(
          "class generators disagree on output width");
    }
    total += counts[c];
  }
  LabeledSamples out;
  out.features.resize(total, dim);
  out.labels.reserve(total);
  int64_t row = 0;
  for (size_t c = 0; c < counts.size(); ++c) {
    ASSIGN_OR_RETURN(nn::Matrix block,
                     GenerateSynthetic(generators[c], rng, counts[c]));
    out.features.middleRows(row, counts[c]) = block;
    row += counts[c];
    out.labels.insert(out.labels.end(), counts[c], static_cast<int>(c));
  }
  return out;
}

}  // namespace fedgan::federation
