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

#include "fedgan/federation/history.h"

#include "absl/strings/str_cat.h"
#include "fedgan/util/format.h"

namespace fedgan::federation {

std::string HistoryCsv(const std::vector<RoundRecord>& history) {
  std::string out = "round,client_id,disc_loss,gen_loss\n";
  for (const RoundRecord& record : history) {
    for (const auto& [client, trace] : record.client_traces) {
      absl::StrAppend(&out, record.round, ",", client, ",");
      if (!trace.empty()) {
        absl::StrAppend(&out, FormatDouble(trace.back().disc_objective), ",",
                        FormatDouble(trace.back().gen_loss));
      } else {
        out += ",";
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace fedgan::federation
