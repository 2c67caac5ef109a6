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

#ifndef FEDGAN_CHAIN_EXPORT_H_
#define FEDGAN_CHAIN_EXPORT_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedgan/chain/ledger.h"

namespace fedgan::chain {

// One JSON object per block: height, prev_hash, hash, proposer,
// partition_count, tx_digests, votes, por_latency_s, dpos_latency_s.
absl::StatusOr<std::string> ChainToJsonLines(const Ledger& ledger);
absl::Status WriteChainJsonLines(const Ledger& ledger, const std::string& path);

struct LatencyRow {
  double block_kb = 0.0;
  int miners = 0;
  double por_s = 0.0;
  double dpos_s = 0.0;
};

// Header "block_kb,miners,por_s,dpos_s" followed by one line per row.
std::string LatencyCsv(const std::vector<LatencyRow>& rows);

}  // namespace fedgan::chain

#endif  // FEDGAN_CHAIN_EXPORT_H_
