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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fedgan/federation/aggregators.h"
#include "fedgan/federation/federation.h"
#include "fedgan/federation/history.h"
#include "fedgan/nn/gan.h"
#include "fedgan/nn/presets.h"
#include "fedgan/util/rng.h"
#include "generators.h"
#include "gtest/gtest.h"

namespace fedgan::federation {
namespace {

nn::NetworkParameters OneLayer(std::vector<double> w) {
  nn::Layer layer{nn::Matrix(1, static_cast<int64_t>(w.size())),
                  nn::Vector::Zero(1), nn::Activation::Identity()};
  for (size_t i = 0; i < w.size(); ++i) layer.weight(0, i) = w[i];
  return nn::NetworkParameters::Create({layer}).value();
}

// Rows tagged with their original index in column 0.
nn::Matrix IndexedDataset(int64_t rows) {
  nn::Matrix m(rows, 2);
  for (int64_t i = 0; i < rows; ++i) {
    m(i, 0) = static_cast<double>(i);
    m(i, 1) = -static_cast<double>(i);
  }
  return m;
}

std::vector<int64_t> Sizes(const std::vector<nn::Matrix>& shards) {
  std::vector<int64_t> out;
  for (const auto& s : shards) out.push_back(s.rows());
  return out;
}

TEST(PartitionIidTest, Examples) {
  RngStream rng(1);
  EXPECT_EQ(Sizes(PartitionIid(IndexedDataset(100), 5, rng).value()),
            (std::vector<int64_t>{20, 20, 20, 20, 20}));
  EXPECT_EQ(Sizes(PartitionIid(IndexedDataset(7), 3, rng).value()),
            (std::vector<int64_t>{3, 2, 2}));
  RngStream a(5), b(5);
  auto x = PartitionIid(IndexedDataset(30), 4, a).value();
  auto y = PartitionIid(IndexedDataset(30), 4, b).value();
  for (size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], y[i]);
}

TEST(PartitionIidTest, Errors) {
  RngStream rng(2);
  EXPECT_FALSE(PartitionIid(IndexedDataset(10), 0, rng).ok());
  EXPECT_FALSE(PartitionIid(IndexedDataset(3), 4, rng).ok());
}

TEST(PartitionIidTest, DisjointCover) {
  RngStream rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t rows = 1 + static_cast<int64_t>(rng.UniformIndex(60));
    const int n = 1 + static_cast<int>(rng.UniformIndex(rows));
    auto shards = PartitionIid(IndexedDataset(rows), n, rng).value();
    std::multiset<int64_t> seen;
    int64_t lo = rows, hi = 0;
    for (const auto& s : shards) {
      lo = std::min<int64_t>(lo, s.rows());
      hi = std::max<int64_t>(hi, s.rows());
      for (int64_t i = 0; i < s.rows(); ++i) {
        seen.insert(static_cast<int64_t>(s(i, 0)));
        EXPECT_EQ(s(i, 1), -s(i, 0));
      }
    }
    EXPECT_LE(hi - lo, 1);
    ASSERT_EQ(static_cast<int64_t>(seen.size()), rows);
    int64_t expected = 0;
    for (int64_t v : seen) EXPECT_EQ(v, expected++);
  }
}

TEST(AggregateTest, Examples) {
  auto mean = Aggregate(std::vector{OneLayer({1, 2}), OneLayer({3, 4}),
                                    OneLayer({5, 6})})
                  .value();
  EXPECT_EQ(mean.layer(0).weight(0, 0), 3.0);
  EXPECT_EQ(mean.layer(0).weight(0, 1), 4.0);

  auto zero = Aggregate(std::vector{OneLayer({0.3, -1.7}),
                                    OneLayer({-0.3, 1.7})})
                  .value();
  EXPECT_TRUE(zero.layer(0).weight.isZero(0.0));

  RngStream rng(4);
  auto arch = nn::ToyGanArchitecture(2);
  auto net = nn::NetworkParameters::Initialize(arch.generator, rng).value();
  auto same = Aggregate(std::vector{net, net, net, net}).value();
  for (size_t l = 0; l < net.num_layers(); ++l) {
    EXPECT_TRUE(same.layer(l).weight.isApprox(net.layer(l).weight, 1e-15));
  }
}

TEST(AggregateTest, Errors) {
  EXPECT_FALSE(Aggregate(std::vector<nn::NetworkParameters>{}).ok());
  EXPECT_FALSE(Aggregate(std::vector{OneLayer({1}), OneLayer({1, 2})}).ok());
}

TEST(AggregateTest, Linearity) {
  RngStream rng(5);
  auto arch = nn::ToyGanArchitecture(2, 2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<nn::NetworkParameters> nets, scaled;
    const double c = rng.Uniform(-3.0, 3.0);
    for (int i = 0; i < 4; ++i) {
      nets.push_back(
          nn::NetworkParameters::Initialize(arch.discriminator, rng).value());
      nn::NetworkParameters s = nets.back();
      for (auto& layer : s.mutable_layers()) {
        layer.weight *= c;
        layer.bias *= c;
      }
      scaled.push_back(std::move(s));
    }
    auto a = Aggregate(scaled).value();
    auto b = Aggregate(nets).value();
    for (size_t l = 0; l < a.num_layers(); ++l) {
      EXPECT_LT((a.layer(l).weight - c * b.layer(l).weight).cwiseAbs().maxCoeff(),
                1e-12);
    }
  }
}

struct ToyFederation {
  FederationConfig config;
  std::vector<ClientState> clients;
};

ToyFederation ToySetup(int clients, int rounds, uint64_t seed, int rows = 60) {
  RngStream data(seed);
  nn::Matrix dataset = testing::RandomMatrix(data, rows, 2);
  auto shards = PartitionIid(dataset, clients, data).value();
  ToyFederation s;
  s.config.num_clients = clients;
  s.config.global_rounds = rounds;
  s.config.hp.minibatch_size = 8;
  s.clients =
      MakeClients(shards, nn::ToyGanArchitecture(2, 2, 8), seed).value();
  return s;
}

TEST(RunTrainingTest, NoLocalEpochsLeavesGlobalsUnchanged) {
  ToyFederation s = ToySetup(1, 1, 6);
  s.config.hp.local_epochs = 0;
  const auto disc = s.clients[0].disc;
  const auto gen = s.clients[0].gen;
  CentralAggregator central;
  auto history = RunTraining(s.config, s.clients, central).value();
  ASSERT_EQ(history.size(), 1u);
  EXPECT_TRUE(history[0].global_disc == disc);
  EXPECT_TRUE(history[0].global_gen == gen);
}

TEST(RunTrainingTest, SingleClientMatchesStandalone) {
  ToyFederation s = ToySetup(1, 4, 7);
  const ClientState start = s.clients[0];
  CentralAggregator central;
  auto history = RunTraining(s.config, s.clients, central).value();

  RngStream rng = start.rng;
  nn::NetworkParameters disc = start.disc, gen = start.gen;
  for (int t = 0; t < 4; ++t) {
    auto r = nn::LocalUpdate(start.shard, disc, gen, s.config.hp, rng).value();
    disc = r.disc;
    gen = r.gen;
  }
  EXPECT_TRUE(history.back().global_disc == disc);
  EXPECT_TRUE(history.back().global_gen == gen);
}

TEST(RunTrainingTest, HistoryBookkeeping) {
  ToyFederation s = ToySetup(3, 5, 8);
  CentralAggregator central;
  auto history = RunTraining(s.config, s.clients, central).value();
  ASSERT_EQ(history.size(), 5u);
  for (size_t i = 0; i < history.size(); ++i) {
    EXPECT_EQ(history[i].round, static_cast<int>(i) + 1);
    EXPECT_EQ(history[i].client_traces.size(), 3u);
    EXPECT_FALSE(history[i].block_height.has_value());
  }
  const std::string csv = HistoryCsv(history);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 5 * 3);
  EXPECT_EQ(csv.rfind("round,client_id,disc_loss,gen_loss\n", 0), 0u);
}

TEST(RunTrainingTest, Deterministic) {
  ToyFederation a = ToySetup(3, 3, 9), b = ToySetup(3, 3, 9);
  CentralAggregator central;
  auto x = RunTraining(a.config, a.clients, central).value();
  auto y = RunTraining(b.config, b.clients, central).value();
  EXPECT_TRUE(x.back().global_disc == y.back().global_disc);
  EXPECT_TRUE(x.back().global_gen == y.back().global_gen);
}

TEST(RunTrainingTest, RejectsClientCountMismatch) {
  ToyFederation s = ToySetup(2, 1, 10);
  s.config.num_clients = 3;
  CentralAggregator central;
  EXPECT_FALSE(RunTraining(s.config, s.clients, central).ok());
}

BlockchainAggregator HonestChain(uint64_t seed, int clients) {
  RngStream rng(seed);
  auto miners = chain::RandomMinerRoster(rng, 10, 1.0);
  chain::ConsensusParams params = chain::PresetParams(500.0);
  params.partition_count = std::min(10, clients);
  return BlockchainAggregator(std::move(miners), params, rng.Fork(1));
}

TEST(RunTrainingTest, BlockchainMatchesCentralBitForBit) {
  ToyFederation a = ToySetup(4, 3, 11), b = ToySetup(4, 3, 11);
  CentralAggregator central;
  BlockchainAggregator chained = HonestChain(11, 4);
  auto x = RunTraining(a.config, a.clients, central).value();
  auto y = RunTraining(b.config, b.clients, chained).value();
  for (size_t t = 0; t < x.size(); ++t) {
    EXPECT_TRUE(x[t].global_disc == y[t].global_disc);
    EXPECT_TRUE(x[t].global_gen == y[t].global_gen);
    EXPECT_EQ(y[t].block_height, static_cast<int64_t>(t) + 1);
    EXPECT_LT(y[t].por_latency_s, y[t].dpos_latency_s);
  }
  EXPECT_EQ(chained.ledger().size(), 4);
  EXPECT_TRUE(chained.ledger().Verify(&chained.registry()).ok);
}

TEST(RunTrainingTest, RejectedBlockNamesRound) {
  ToyFederation s = ToySetup(2, 2, 12);
  RngStream rng(12);
  auto miners = chain::RandomMinerRoster(rng, 3, 1.0);
  chain::ConsensusParams params = chain::PresetParams(50.0);
  params.committee_size = 3;
  params.partition_count = 2;
  std::map<std::string, chain::VotePolicy> honesty;
  for (const auto& m : miners) {
    honesty[m.miner_id] = chain::VotePolicy::kAlwaysReject;
  }
  BlockchainAggregator chained(miners, params, rng.Fork(1), honesty);
  auto out = RunTraining(s.config, s.clients, chained);
  ASSERT_FALSE(out.ok());
  EXPECT_NE(out.status().message().find("round 1"), std::string::npos);
}

TEST(RunTrainingTest, DpClientsAreDeterministicAndDiffer) {
  auto run = [](bool dp) {
    RngStream data(13);
    nn::Matrix dataset = testing::RandomMatrix(data, 40, 2);
    auto shards = PartitionIid(dataset, 2, data).value();
    std::optional<privacy::DpConfig> cfg;
    if (dp) cfg = privacy::DpConfig{};
    auto clients =
        MakeClients(shards, nn::ToyGanArchitecture(2, 2, 8), 13, cfg).value();
    FederationConfig config;
    config.num_clients = 2;
    config.global_rounds = 2;
    config.hp.minibatch_size = 10;
    CentralAggregator central;
    return RunTraining(config, clients, central).value().back();
  };
  auto a = run(true), b = run(true), plain = run(false);
  EXPECT_TRUE(a.global_disc == b.global_disc);
  EXPECT_TRUE(a.global_gen == b.global_gen);
  EXPECT_FALSE(a.global_gen == plain.global_gen);
}

TEST(UpdateCodecTest, RoundTrip) {
  ToyFederation s = ToySetup(1, 1, 14);
  auto bytes = EncodeUpdate(s.clients[0].disc, s.clients[0].gen);
  auto u = DecodeUpdate("x", bytes).value();
  EXPECT_TRUE(u.disc == s.clients[0].disc);
  EXPECT_TRUE(u.gen == s.clients[0].gen);
  bytes.push_back(0);
  EXPECT_FALSE(DecodeUpdate("x", bytes).ok());
}

TEST(GenerateSyntheticTest, Examples) {
  ToyFederation s = ToySetup(1, 1, 15);
  RngStream rng(1);
  EXPECT_EQ(GenerateSynthetic(s.clients[0].gen, rng, 0).value().rows(), 0);
  RngStream a(2), b(2);
  EXPECT_EQ(GenerateSynthetic(s.clients[0].gen, a, 16).value(),
            GenerateSynthetic(s.clients[0].gen, b, 16).value());

  std::vector<nn::NetworkParameters> gens(3, s.clients[0].gen);
  auto set = GenerateSyntheticPerClass(gens, {500, 500, 500}, rng).value();
  EXPECT_EQ(set.features.rows(), 1500);
  EXPECT_EQ(set.labels.size(), 1500u);
  EXPECT_EQ(std::count(set.labels.begin(), set.labels.end(), 2), 500);
  EXPECT_FALSE(GenerateSyntheticPerClass(gens, {1, 2}, rng).ok());
}

}  // namespace
}  // namespace fedgan::federation
