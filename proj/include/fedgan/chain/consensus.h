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

// Reputation-elected verification committee and the analytic latency model.
//
// Units: sizes in kilobits, rates in kbps, compute in cycles and cycles/s, so
// every latency term is in seconds. Latencies live on a logical clock.

#ifndef FEDGAN_CHAIN_CONSENSUS_H_
#define FEDGAN_CHAIN_CONSENSUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedgan/chain/digest.h"
#include "fedgan/chain/ledger.h"
#include "fedgan/util/rng.h"

namespace fedgan::chain {

// Kilobits per kilobyte.
inline constexpr double kKilobitsPerKilobyte = 8.0;

struct MinerProfile {
  std::string miner_id;
  double compute_cps = 1e6;
  double uplink_kbps = 100.0;
  double downlink_kbps = 100.0;
  // Latency realized in the miner's last verification round, T_m.
  double latency_s = 0.0;
  double reputation = 0.0;

  absl::Status Validate() const;
};

struct ConsensusParams {
  // tau, seconds.
  double latency_threshold_s = 1.0;
  // xi, seconds per kilobit per participating miner.
  double broadcast_coeff = 0.5;
  // B and B^re.
  double block_kb = 500.0 * kKilobitsPerKilobyte;
  double block_result_kb = 50.0 * kKilobitsPerKilobyte;
  // Tr_k and Tr_k^re.
  double part_kb = 50.0 * kKilobitsPerKilobyte;
  double part_result_kb = 5.0 * kKilobitsPerKilobyte;
  // Phi_m and Phi_m^B.
  double part_cycles = 4e5;
  double block_cycles = 4e6;
  // K and M.
  int partition_count = 10;
  int committee_size = 10;
  double approval_threshold = 0.51;

  absl::Status Validate() const;
};

// Cycles needed to verify one kilobit; fixes Phi from the data size since no
// measured figure is available.
inline constexpr double kDefaultCyclesPerKb = 1000.0;

// Default evaluation preset for a block of `block_kilobytes` KB split into
// K = M = 10 equal parts, with B^re = 50 KB.
ConsensusParams PresetParams(double block_kilobytes,
                             double cycles_per_kb = kDefaultCyclesPerKb);

// `count` miners with compute in [1e3, 1e6] cycles/s and both link rates in
// [100, 250] kbps. T_m starts at tau, so every reputation starts at 0.
std::vector<MinerProfile> RandomMinerRoster(RngStream& rng, int count,
                                            double latency_threshold_s);

// Psi = e^{1 - T/tau} - 1.
absl::StatusOr<double> ReputationScore(double latency_s,
                                       double latency_threshold_s);

// Recomputes every reputation from T_m and returns the top `committee_size`
// in descending reputation, ties broken by lower miner_id.
absl::StatusOr<std::vector<MinerProfile>> SelectMiners(
    std::vector<MinerProfile> candidates, int committee_size,
    double latency_threshold_s);

// Committee members take turns acting as block manager.
const MinerProfile& BlockManager(const std::vector<MinerProfile>& committee,
                                 int64_t slot);

struct BlockPart {
  // Transaction index range [begin, end).
  int64_t begin = 0;
  int64_t end = 0;
  uint64_t tag = 0;
};

// K contiguous parts whose sizes differ by at most one, with distinct random
// tags. Fails when K exceeds the transaction count.
absl::StatusOr<std::vector<BlockPart>> PartitionBlock(const Block& block,
                                                      int partition_count,
                                                      RngStream& rng);

// T = Tr_k/r^d + Phi_m/c + xi * Tr_k * 2 + Tr_k^re/r^u.
double PorLatency(const MinerProfile& miner, const ConsensusParams& params);

// T = B/r^d + Phi^B/c + xi * B * N + B^re/r^u.
double DposLatency(const MinerProfile& miner, const ConsensusParams& params,
                   int participants);

enum class VotePolicy { kHonest, kAlwaysReject, kAlwaysApprove };

struct VerificationOutcome {
  bool approved = false;
  int positive_votes = 0;
  int committee_size = 0;
  std::map<std::string, bool> votes;
  // Member id to the peer it cross-checked.
  std::map<std::string, std::string> partners;
  // Slowest member; members verify in parallel.
  double latency_s = 0.0;
};

// True iff positive / committee_size >= threshold.
bool MeetsApproval(int positive_votes, int committee_size, double threshold);

// Every member checks the block hash and the signatures and sizes of its own
// part, then repeats the check on the part of one other member chosen
// uniformly. Honest members vote with the result; other policies override it.
// Members absent from `honesty` are honest.
absl::StatusOr<VerificationOutcome> PorVerify(
    const Block& block, const std::vector<MinerProfile>& committee,
    const ConsensusParams& params, RngStream& rng, const KeyRegistry& registry,
    const std::map<std::string, VotePolicy>& honesty = {});

struct RoundOutcome {
  Block block;
  VerificationOutcome verification;
  double por_latency_s = 0.0;
  // Counterfactual: the same committee verifying the whole block under DPoS.
  double dpos_latency_s = 0.0;
};

// Elects the committee, has the slot's manager build a block from `pending`
// on top of the ledger head, verifies it and appends it. Committee members'
// T_m (and reputations) in `miners` are updated from the realized latencies.
// The latency model uses `params` as given; K is reduced to the transaction
// count when needed. A rejected block is an error carrying the vote tally.
absl::StatusOr<RoundOutcome> RunConsensusRound(
    std::vector<Transaction> pending, std::vector<MinerProfile>& miners,
    const ConsensusParams& params, RngStream& rng, const KeyRegistry& registry,
    Ledger& ledger, const std::map<std::string, VotePolicy>& honesty = {});

}  // namespace fedgan::chain

#endif  // FEDGAN_CHAIN_CONSENSUS_H_
