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

#ifndef FEDGAN_EVAL_EMPIRICAL_H_
#define FEDGAN_EVAL_EMPIRICAL_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "fedgan/nn/network.h"

namespace fedgan::eval {

inline constexpr int kDefaultHistogramBins = 16;

// Histogram estimate of JSD (nats) between two sample sets: both are binned
// on one equal-width product grid spanning their joint range (`bins` per
// dimension), every cell gets one extra count, and the two normalized
// histograms are compared with the exact discrete JSD. The grid may hold at
// most 2^22 cells.
absl::StatusOr<double> EmpiricalJsd(const nn::Matrix& real,
                                    const nn::Matrix& generated,
                                    int bins = kDefaultHistogramBins);

}  // namespace fedgan::eval

#endif  // FEDGAN_EVAL_EMPIRICAL_H_
