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

#ifndef FEDGAN_EVAL_MIXING_H_
#define FEDGAN_EVAL_MIXING_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/eval/classifier.h"
#include "fedgan/eval/datasets.h"
#include "fedgan/eval/metrics.h"
#include "fedgan/nn/network.h"

namespace fedgan::eval {

// ratio = synthetic count / real count. With per_class the synthetic budget
// is split evenly across classes (rebalancing the training set); without it
// each class gets ratio times its own real count.
struct MixingConfig {
  double ratio = 0.0;
  bool per_class = true;

  absl::Status Validate() const;
};

struct MixingSweepConfig {
  std::vector<MixingConfig> cells;
  ClassifierConfig classifier;
  // When positive and smaller than the real training set, a random subset of
  // this many real samples is used in every cell.
  int64_t real_train_size = 0;
};

struct MixingRow {
  MixingConfig mixing;
  int64_t real_size = 0;
  int64_t synthetic_size = 0;
  ClassMetrics metrics;

  int64_t train_size() const { return real_size + synthetic_size; }
};

// Per-class synthetic counts for a cell.
std::vector<int64_t> SyntheticCounts(const MixingConfig& mixing,
                                     const std::vector<int64_t>& real_counts);

// Trains one classifier per cell on real + synthetic data and evaluates it on
// `test`. Every cell trains from the same classifier stream, so a ratio-0
// cell is exactly real-only training; synthetic draws use a per-cell stream.
absl::StatusOr<std::vector<MixingRow>> MixingSweep(
    const LabeledDataset& real_train, const LabeledDataset& test,
    const std::vector<nn::NetworkParameters>& class_generators,
    const MixingSweepConfig& config, uint64_t seed);

// ratio,per_class,real_size,synthetic_size,train_size,accuracy, then per
// class c: precision_c,sensitivity_c,f1_c,undefined_c. The undefined column
// lists which of p/s/f are flagged, or is empty.
std::string MixingCsv(const std::vector<MixingRow>& rows);

// One row per true class: true_class,pred_0,...,pred_{C-1}.
std::string ConfusionCsv(const ConfusionMatrix& confusion);

}  // namespace fedgan::eval

#endif  // FEDGAN_EVAL_MIXING_H_
