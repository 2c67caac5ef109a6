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

#include "fedgan/chain/ledger.h"

#include <bit>
#include <cstring>
#include <utility>

#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::chain {
namespace {

static_assert(std::endian::native == std::endian::little,
              "block encoding assumes a little-endian host");

constexpr uint8_t kBlockVersion = 1;

template <typename T>
void Put(std::vector<uint8_t>& out, T value) {
  uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

void PutBytes(std::vector<uint8_t>& out, std::span<const uint8_t> bytes) {
  Put<uint32_t>(out, static_cast<uint32_t>(bytes.size()));
  out.insert(out.end(), bytes.begin(), bytes.end());
}

void PutString(std::vector<uint8_t>& out, const std::string& s) {
  PutBytes(out, std::span(reinterpret_cast<const uint8_t*>(s.data()),
                          s.size()));
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  absl::StatusOr<T> Get() {
    RETURN_IF_ERROR(Need(sizeof(T)));
    T value;
    std::memcpy(&value, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }

  absl::StatusOr<std::vector<uint8_t>> GetBytes() {
    ASSIGN_OR_RETURN(uint32_t len, Get<uint32_t>());
    RETURN_IF_ERROR(Need(len));
    std::vector<uint8_t> out(bytes_.begin() + offset_,
                             bytes_.begin() + offset_ + len);
    offset_ += len;
    return out;
  }

  absl::StatusOr<std::string> GetString() {
    ASSIGN_OR_RETURN(std::vector<uint8_t> raw, GetBytes());
    return std::string(raw.begin(), raw.end());
  }

  absl::StatusOr<Digest> GetDigest() {
    RETURN_IF_ERROR(Need(32));
    Digest d;
    std::memcpy(d.data(), bytes_.data() + offset_, 32);
    offset_ += 32;
    return d;
  }

  size_t remaining() const { return bytes_.size() - offset_; }

 private:
  absl::Status Need(size_t n) const {
    if (bytes_.size() - offset_ < n) {
      return absl::DataLossError(
          absl::StrCat("block truncated at byte ", offset_));
    }
    return absl::OkStatus();
  }

  std::span<const uint8_t> bytes_;
  size_t offset_ = 0;
};

std::vector<uint8_t> EncodeBody(const Block& block) {
  std::vector<uint8_t> out;
  out.push_back(kBlockVersion);
  Put<int64_t>(out, block.height);
  out.insert(out.end(), block.prev_hash.begin(), block.prev_hash.end());
  PutString(out, block.proposer);
  Put<int32_t>(out, block.partition_count);
  Put<uint32_t>(out, static_cast<uint32_t>(block.transactions.size()));
  for (const Transaction& tx : block.transactions) {
    PutString(out, tx.sender);
    Put<int64_t>(out, tx.round);
    PutBytes(out, tx.payload);
    out.insert(out.end(), tx.signature.begin(), tx.signature.end());
  }
  return out;
}

}  // namespace

absl::StatusOr<Transaction> MakeTransaction(const KeyRegistry& registry,
                                            std::string sender,
                                            std::vector<uint8_t> payload,
                                            int64_t round) {
  Transaction tx;
  ASSIGN_OR_RETURN(tx.signature, registry.Sign(sender, payload));
  tx.sender = std::move(sender);
  tx.payload = std::move(payload);
  tx.round = round;
  return tx;
}

double Block::size_kb() const {
  double total = 0.0;
  for (const Transaction& tx : transactions) total += tx.payload_size_kb();
  return total;
}

std::vector<uint8_t> EncodeBlock(const Block& block) {
  std::vector<uint8_t> out = EncodeBody(block);
  out.insert(out.end(), block.hash.begin(), block.hash.end());
  return out;
}

absl::StatusOr<Block> DecodeBlock(std::span<const uint8_t> bytes) {
  Reader in(bytes);
  ASSIGN_OR_RETURN(uint8_t version, in.Get<uint8_t>());
  if (version != kBlockVersion) {
    return absl::DataLossError(
        absl::StrCat("unsupported block version ", version));
  }
  Block block;
  ASSIGN_OR_RETURN(block.height, in.Get<int64_t>());
  ASSIGN_OR_RETURN(block.prev_hash, in.GetDigest());
  ASSIGN_OR_RETURN(block.proposer, in.GetString());
  ASSIGN_OR_RETURN(block.partition_count, in.Get<int32_t>());
  ASSIGN_OR_RETURN(uint32_t count, in.Get<uint32_t>());
  for (uint32_t i = 0; i < count; ++i) {
    Transaction tx;
    ASSIGN_OR_RETURN(tx.sender, in.GetString());
    ASSIGN_OR_RETURN(tx.round, in.Get<int64_t>());
    ASSIGN_OR_RETURN(tx.payload, in.GetBytes());
    ASSIGN_OR_RETURN(tx.signature, in.GetDigest());
    block.transactions.push_back(std::move(tx));
  }
  ASSIGN_OR_RETURN(block.hash, in.GetDigest());
  if (in.remaining() != 0) {
    return absl::DataLossError(
        absl::StrCat(in.remaining(), " trailing bytes after block"));
  }
  return block;
}

Digest ComputeBlockHash(const Block& block) {
  return Sha256(EncodeBody(block));
}

Block SealBlock(Block block) {
  block.hash = ComputeBlockHash(block);
  return block;
}

Block GenesisBlock() {
  Block genesis;
  genesis.proposer = "genesis";
  return SealBlock(std::move(genesis));
}

Ledger::Ledger() {
  Block genesis = GenesisBlock();
  head_hash_ = genesis.hash;
  blocks_.push_back(EncodeBlock(genesis));
  receipts_.emplace_back();
}

absl::Status Ledger::Append(const Block& block, bool approved,
                            BlockReceipt receipt) {
  if (!approved) {
    return absl::FailedPreconditionError(
        absl::StrCat("block ", block.height, " was not approved"));
  }
  if (block.height != size()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "block height ", block.height, " does not follow head ", size() - 1));
  }
  if (block.prev_hash != head_hash_) {
    return absl::FailedPreconditionError(
        absl::StrCat("block ", block.height, " prev_hash ",
                     ToHex(block.prev_hash), " does not match head ",
                     ToHex(head_hash_)));
  }
  if (ComputeBlockHash(block) != block.hash) {
    return absl::InvalidArgumentError(
        absl::StrCat("block ", block.height, " hash does not match contents"));
  }
  blocks_.push_back(EncodeBlock(block));
  receipts_.push_back(std::move(receipt));
  head_hash_ = block.hash;
  return absl::OkStatus();
}

absl::StatusOr<Block> Ledger::BlockAt(int64_t height) const {
  if (height < 0 || height >= size()) {
    return absl::OutOfRangeError(absl::StrCat("no block at height ", height));
  }
  return DecodeBlock(blocks_[height]);
}

ChainCheck Ledger::Verify(const KeyRegistry* registry) const {
  auto fail = [](int64_t height, std::string reason) {
    return ChainCheck{false, height, std::move(reason)};
  };
  Digest prev{};
  for (int64_t h = 0; h < size(); ++h) {
    const std::vector<uint8_t>& bytes = blocks_[h];
    if (bytes.size() < 32) return fail(h, "block shorter than its hash");
    auto block = DecodeBlock(bytes);
    if (!block.ok()) return fail(h, std::string(block.status().message()));
    const Digest actual =
        Sha256(std::span(bytes.data(), bytes.size() - 32));
    if (actual != block->hash) return fail(h, "hash mismatch");
    if (block->height != h) return fail(h, "height out of sequence");
    if (block->prev_hash != prev) return fail(h, "prev_hash link broken");
    if (registry != nullptr) {
      for (const Transaction& tx : block->transactions) {
        if (!registry->Verify(tx.sender, tx.payload, tx.signature)) {
          return fail(h, absl::StrCat("bad signature from ", tx.sender));
        }
      }
    }
    prev = block->hash;
  }
  return ChainCheck{};
}

}  // namespace fedgan::chain
