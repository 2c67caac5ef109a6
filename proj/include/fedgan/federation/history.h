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

#ifndef FEDGAN_FEDERATION_HISTORY_H_
#define FEDGAN_FEDERATION_HISTORY_H_

#include <string>
#include <vector>

#include "fedgan/federation/federation.h"

namespace fedgan::federation {

// Columns round,client_id,disc_loss,gen_loss; one row per client per round
// with the losses of the client's last local epoch (empty when L = 0).
std::string HistoryCsv(const std::vector<RoundRecord>& history);

}  // namespace fedgan::federation

#endif  // FEDGAN_FEDERATION_HISTORY_H_
