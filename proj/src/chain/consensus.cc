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

#include "fedgan/chain/consensus.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::chain {

absl::Status MinerProfile::Validate() const {
  if (!(compute_cps > 0.0) || !(uplink_kbps > 0.0) || !(downlink_kbps > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "miner ", miner_id, ": compute and link rates must be positive"));
  }
  if (!(latency_s >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("miner ", miner_id, ": latency must be >= 0"));
  }
  return absl::OkStatus();
}

absl::Status ConsensusParams::Validate() const {
  if (!(latency_threshold_s > 0.0)) {
    return absl::InvalidArgumentError("latency threshold must be > 0");
  }
  if (!(broadcast_coeff >= 0.0)) {
    return absl::InvalidArgumentError("broadcast coefficient must be >= 0");
  }
  if (partition_count < 1 || committee_size < 1) {
    return absl::InvalidArgumentError(
        "partition count and committee size must be >= 1");
  }
  if (!(approval_threshold > 0.5 && approval_threshold <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("approval threshold must lie in (0.5, 1], got ",
                     approval_threshold));
  }
  for (double v : {block_kb, block_result_kb, part_kb, part_result_kb,
                   part_cycles, block_cycles}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          "sizes and cycle counts must be finite and >= 0");
    }
  }
  return absl::OkStatus();
}

ConsensusParams PresetParams(double block_kilobytes, double cycles_per_kb) {
  ConsensusParams p;
  p.latency_threshold_s = 1.0;
  p.broadcast_coeff = 0.5;
  p.partition_count = 10;
  p.committee_size = 10;
  p.block_kb = block_kilobytes * kKilobitsPerKilobyte;
  p.block_result_kb = 50.0 * kKilobitsPerKilobyte;
  p.part_kb = p.block_kb / p.partition_count;
  p.part_result_kb = p.block_result_kb / p.partition_count;
  p.block_cycles = cycles_per_kb * p.block_kb;
  p.part_cycles = p.block_cycles / p.partition_count;
  return p;
}

std::vector<MinerProfile> RandomMinerRoster(RngStream& rng, int count,
                                            double latency_threshold_s) {
  std::vector<MinerProfile> roster;
  roster.reserve(count);
  for (int i = 0; i < count; ++i) {
    MinerProfile m;
    m.miner_id = absl::StrCat("miner-", i < 10 ? "0" : "", i);
    m.compute_cps = rng.Uniform(1e3, 1e6);
    m.uplink_kbps = rng.Uniform(100.0, 250.0);
    m.downlink_kbps = rng.Uniform(100.0, 250.0);
    m.latency_s = latency_threshold_s;
    m.reputation = 0.0;
    roster.push_back(std::move(m));
  }
  return roster;
}

absl::StatusOr<double> ReputationScore(double latency_s,
                                       double latency_threshold_s) {
  if (!(latency_threshold_s > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tau must be > 0, got ", latency_threshold_s));
  }
  if (!(latency_s >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("latency must be >= 0, got ", latency_s));
  }
  return std::exp(1.0 - latency_s / latency_threshold_s) - 1.0;
}

absl::StatusOr<std::vector<MinerProfile>> SelectMiners(
    std::vector<MinerProfile> candidates, int committee_size,
    double latency_threshold_s) {
  if (committee_size < 1 ||
      committee_size > static_cast<int>(candidates.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot select ", committee_size, " miners from ",
                     candidates.size(), " candidates"));
  }
  for (MinerProfile& m : candidates) {
    ASSIGN_OR_RETURN(m.reputation,
                     ReputationScore(m.latency_s, latency_threshold_s));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MinerProfile& a, const MinerProfile& b) {
              if (a.reputation != b.reputation) {
                return a.reputation > b.reputation;
              }
              return a.miner_id < b.miner_id;
            });
  candidates.resize(committee_size);
  return candidates;
}

const MinerProfile& BlockManager(const std::vector<MinerProfile>& committee,
                                 int64_t slot) {
  return committee[static_cast<size_t>(slot) % committee.size()];
}

absl::StatusOr<std::vector<BlockPart>> PartitionBlock(const Block& block,
                                                      int partition_count,
                                                      RngStream& rng) {
  const int64_t n = static_cast<int64_t>(block.transactions.size());
  if (partition_count < 1) {
    return absl::InvalidArgumentError("partition count must be >= 1");
  }
  if (partition_count > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot split ", n, " transactions into ",
                     partition_count, " parts"));
  }
  std::vector<BlockPart> parts;
  std::set<uint64_t> used;
  const int64_t base = n / partition_count;
  const int64_t extra = n % partition_count;
  int64_t begin = 0;
  for (int k = 0; k < partition_count; ++k) {
    const int64_t len = base + (k < extra ? 1 : 0);
    uint64_t tag = rng.NextU64();
    while (!used.insert(tag).second) tag = rng.NextU64();
    parts.push_back({begin, begin + len, tag});
    begin += len;
  }
  return parts;
}

double PorLatency(const MinerProfile& miner, const ConsensusParams& params) {
  return params.part_kb / miner.downlink_kbps +
         params.part_cycles / miner.compute_cps +
         params.broadcast_coeff * params.part_kb * 2.0 +
         params.part_result_kb / miner.uplink_kbps;
}

double DposLatency(const MinerProfile& miner, const ConsensusParams& params,
                   int participants) {
  return params.block_kb / miner.downlink_kbps +
         params.block_cycles / miner.compute_cps +
         params.broadcast_coeff * params.block_kb * participants +
         params.block_result_kb / miner.uplink_kbps;
}

bool MeetsApproval(int positive_votes, int committee_size, double threshold) {
  return static_cast<double>(positive_votes) /
             static_cast<double>(committee_size) >=
         threshold;
}

namespace {

bool PartChecksOut(const Block& block, const BlockPart& part,
                   const KeyRegistry& registry) {
  for (int64_t i = part.begin; i < part.end; ++i) {
    const Transaction& tx = block.transactions[i];
    if (!registry.Verify(tx.sender, tx.payload, tx.signature)) return false;
  }
  return true;
}

// Parts a member is responsible for: with K <= M members share parts
// round-robin, otherwise each member takes every M-th part.
std::vector<size_t> OwnedParts(size_t member, size_t members, size_t parts) {
  std::vector<size_t> owned;
  if (parts <= members) {
    owned.push_back(member % parts);
  } else {
    for (size_t j = member; j < parts; j += members) owned.push_back(j);
  }
  return owned;
}

}  // namespace

absl::StatusOr<VerificationOutcome> PorVerify(
    const Block& block, const std::vector<MinerProfile>& committee,
    const ConsensusParams& params, RngStream& rng, const KeyRegistry& registry,
    const std::map<std::string, VotePolicy>& honesty) {
  RETURN_IF_ERROR(params.Validate());
  const size_t m = committee.size();
  if (m < 2) {
    return absl::InvalidArgumentError(
        "verification needs at least two committee members");
  }
  ASSIGN_OR_RETURN(std::vector<BlockPart> parts,
                   PartitionBlock(block, block.partition_count, rng));
  const bool hash_ok = ComputeBlockHash(block) == block.hash;

  VerificationOutcome out;
  out.committee_size = static_cast<int>(m);
  for (size_t i = 0; i < m; ++i) {
    const MinerProfile& member = committee[i];
    size_t partner = static_cast<size_t>(rng.UniformIndex(m - 1));
    if (partner >= i) ++partner;
    out.partners[member.miner_id] = committee[partner].miner_id;

    bool ok = hash_ok;
    for (size_t owner : {i, partner}) {
      for (size_t j : OwnedParts(owner, m, parts.size())) {
        ok = ok && PartChecksOut(block, parts[j], registry);
      }
    }
    VotePolicy policy = VotePolicy::kHonest;
    if (auto it = honesty.find(member.miner_id); it != honesty.end()) {
      policy = it->second;
    }
    bool vote = ok;
    if (policy == VotePolicy::kAlwaysReject) vote = false;
    if (policy == VotePolicy::kAlwaysApprove) vote = true;
    out.votes[member.miner_id] = vote;
    if (vote) ++out.positive_votes;
    out.latency_s = std::max(out.latency_s, PorLatency(member, params));
  }
  out.approved = MeetsApproval(out.positive_votes, out.committee_size,
                               params.approval_threshold);
  return out;
}

absl::StatusOr<RoundOutcome> RunConsensusRound(
    std::vector<Transaction> pending, std::vector<MinerProfile>& miners,
    const ConsensusParams& params, RngStream& rng, const KeyRegistry& registry,
    Ledger& ledger, const std::map<std::string, VotePolicy>& honesty) {
  if (pending.empty()) {
    return absl::InvalidArgumentError("no pending transactions");
  }
  RETURN_IF_ERROR(params.Validate());
  for (const MinerProfile& miner : miners) RETURN_IF_ERROR(miner.Validate());
  ASSIGN_OR_RETURN(std::vector<MinerProfile> committee,
                   SelectMiners(miners, params.committee_size,
                                params.latency_threshold_s));

  RoundOutcome outcome;
  Block& block = outcome.block;
  block.height = ledger.size();
  block.prev_hash = ledger.head_hash();
  block.proposer = BlockManager(committee, block.height).miner_id;
  block.partition_count = static_cast<int32_t>(
      std::min<size_t>(params.partition_count, pending.size()));
  block.transactions = std::move(pending);
  block = SealBlock(std::move(block));

  ASSIGN_OR_RETURN(outcome.verification,
                   PorVerify(block, committee, params, rng, registry, honesty));
  outcome.por_latency_s = outcome.verification.latency_s;
  for (const MinerProfile& member : committee) {
    outcome.dpos_latency_s =
        std::max(outcome.dpos_latency_s,
                 DposLatency(member, params, params.committee_size));
  }
  for (MinerProfile& miner : miners) {
    if (!outcome.verification.votes.contains(miner.miner_id)) continue;
    miner.latency_s = PorLatency(miner, params);
    ASSIGN_OR_RETURN(miner.reputation,
                     ReputationScore(miner.latency_s,
                                     params.latency_threshold_s));
  }
  if (!outcome.verification.approved) {
    return absl::FailedPreconditionError(absl::StrCat(
        "block ", block.height, " rejected with ",
        outcome.verification.positive_votes, "/",
        outcome.verification.committee_size, " positive votes"));
  }
  RETURN_IF_ERROR(ledger.Append(
      block, true,
      BlockReceipt{outcome.verification.votes, outcome.por_latency_s,
                   outcome.dpos_latency_s}));
  return outcome;
}

}  // namespace fedgan::chain
