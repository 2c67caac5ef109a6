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

#include "fedgan/chain/export.h"

#include "absl/strings/str_cat.h"
#include "fedgan/util/format.h"
#include "fedgan/util/io.h"
#include "fedgan/util/status_macros.h"
#include "nlohmann/json.hpp"

namespace fedgan::chain {

absl::StatusOr<std::string> ChainToJsonLines(const Ledger& ledger) {
  std::string out;
  for (int64_t h = 0; h < ledger.size(); ++h) {
    ASSIGN_OR_RETURN(Block block, ledger.BlockAt(h));
    const BlockReceipt& receipt = ledger.ReceiptAt(h);
    nlohmann::ordered_json line;
    line["height"] = block.height;
    line["prev_hash"] = ToHex(block.prev_hash);
    line["hash"] = ToHex(block.hash);
    line["proposer"] = block.proposer;
    line["partition_count"] = block.partition_count;
    nlohmann::ordered_json digests = nlohmann::ordered_json::array();
    for (const Transaction& tx : block.transactions) {
      digests.push_back(ToHex(Sha256(tx.payload)));
    }
    line["tx_digests"] = std::move(digests);
    nlohmann::ordered_json votes = nlohmann::ordered_json::object();
    for (const auto& [id, vote] : receipt.votes) votes[id] = vote;
    line["votes"] = std::move(votes);
    line["por_latency_s"] = receipt.por_latency_s;
    line["dpos_latency_s"] = receipt.dpos_latency_s;
    absl::StrAppend(&out, line.dump(), "\n");
  }
  return out;
}

absl::Status WriteChainJsonLines(const Ledger& ledger,
                                 const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ChainToJsonLines(ledger));
  return WriteTextFile(path, text);
}

std::string LatencyCsv(const std::vector<LatencyRow>& rows) {
  std::string out = "block_kb,miners,por_s,dpos_s\n";
  for (const LatencyRow& row : rows) {
    absl::StrAppend(&out, FormatDouble(row.block_kb), ",", row.miners, ",",
                    FormatDouble(row.por_s), ",", FormatDouble(row.dpos_s),
                    "\n");
  }
  return out;
}

}  // namespace fedgan::chain
