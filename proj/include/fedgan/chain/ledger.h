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

#ifndef FEDGAN_CHAIN_LEDGER_H_
#define FEDGAN_CHAIN_LEDGER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedgan/chain/digest.h"

namespace fedgan::chain {

struct Transaction {
  std::string sender;
  std::vector<uint8_t> payload;
  Digest signature{};
  int64_t round = 0;

  // Serialized payload length in kilobits (1 kb = 1000 bits).
  double payload_size_kb() const {
    return static_cast<double>(payload.size()) * 8.0 / 1000.0;
  }
};

absl::StatusOr<Transaction> MakeTransaction(const KeyRegistry& registry,
                                            std::string sender,
                                            std::vector<uint8_t> payload,
                                            int64_t round);

struct Block {
  int64_t height = 0;
  Digest prev_hash{};
  std::vector<Transaction> transactions;
  std::string proposer;
  int32_t partition_count = 1;
  Digest hash{};

  double size_kb() const;
};

// Canonical encoding of everything except `hash`, which is appended last.
// The block hash is SHA-256 over the encoding minus its trailing 32 bytes.
std::vector<uint8_t> EncodeBlock(const Block& block);
absl::StatusOr<Block> DecodeBlock(std::span<const uint8_t> bytes);
Digest ComputeBlockHash(const Block& block);

// Fills in `hash` from the other fields.
Block SealBlock(Block block);

Block GenesisBlock();

// What the committee reported when a block was accepted.
struct BlockReceipt {
  std::map<std::string, bool> votes;
  double por_latency_s = 0.0;
  double dpos_latency_s = 0.0;
};

struct ChainCheck {
  bool ok = true;
  // Height of the first block that failed; -1 when ok.
  int64_t failed_height = -1;
  std::string reason;
};

// Append-only chain. Blocks are held in their encoded form, and the hash
// walk works from those bytes alone.
class Ledger {
 public:
  // A ledger holding only the genesis block.
  Ledger();

  int64_t size() const { return static_cast<int64_t>(blocks_.size()); }
  const Digest& head_hash() const { return head_hash_; }

  // Fails unless `approved`, the height follows the head, prev_hash links to
  // the head and the hash field matches the contents.
  absl::Status Append(const Block& block, bool approved,
                      BlockReceipt receipt = {});

  absl::StatusOr<Block> BlockAt(int64_t height) const;
  const BlockReceipt& ReceiptAt(int64_t height) const {
    return receipts_[height];
  }

  // Raw stored bytes; exposed so that storage corruption can be simulated.
  const std::vector<uint8_t>& BytesAt(int64_t height) const {
    return blocks_[height];
  }
  std::vector<uint8_t>& MutableBytesAt(int64_t height) {
    return blocks_[height];
  }

  // Genesis-to-head walk: decodes each block, recomputes its hash and checks
  // the height sequence and prev_hash links. Signatures are checked when a
  // registry is supplied.
  ChainCheck Verify(const KeyRegistry* registry = nullptr) const;

 private:
  std::vector<std::vector<uint8_t>> blocks_;
  std::vector<BlockReceipt> receipts_;
  Digest head_hash_{};
};

}  // namespace fedgan::chain

#endif  // FEDGAN_CHAIN_LEDGER_H_
