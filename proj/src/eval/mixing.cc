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

#include "fedgan/eval/mixing.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "fedgan/nn/gan.h"
#include "fedgan/util/format.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::eval {

absl::Status MixingConfig::Validate() const {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mixing ratio must be >= 0, got ", ratio));
  }
  return absl::OkStatus();
}

std::vector<int64_t> SyntheticCounts(const MixingConfig& mixing,
                                     const std::vector<int64_t>& real_counts) {
  std::vector<int64_t> out(real_counts.size(), 0);
  if (real_counts.empty()) return out;
  if (mixing.per_class) {
    const int64_t real_total =
        std::accumulate(real_counts.begin(), real_counts.end(), int64_t{0});
    const auto budget = static_cast<int64_t>(
        std::llround(mixing.ratio * static_cast<double>(real_total)));
    const auto classes = static_cast<int64_t>(real_counts.size());
    for (int64_t c = 0; c < classes; ++c) {
      out[c] = budget / classes + (c < budget % classes ? 1 : 0);
    }
  } else {
    for (size_t c = 0; c < real_counts.size(); ++c) {
      out[c] = static_cast<int64_t>(
          std::llround(mixing.ratio * static_cast<double>(real_counts[c])));
    }
  }
  return out;
}

absl::StatusOr<std::vector<MixingRow>> MixingSweep(
    const LabeledDataset& real_train, const LabeledDataset& test,
    const std::vector<nn::NetworkParameters>& class_generators,
    const MixingSweepConfig& config, uint64_t seed) {
  if (config.cells.empty()) {
    return absl::InvalidArgumentError("mixing sweep has no ratios");
  }
  RETURN_IF_ERROR(real_train.Validate());
  RETURN_IF_ERROR(test.Validate());
  if (static_cast<int>(class_generators.size()) != real_train.num_classes) {
    return absl::InvalidArgumentError(absl::StrCat(
        class_generators.size(), " class generators for ",
        real_train.num_classes, " classes"));
  }
  for (const MixingConfig& cell : config.cells) {
    RETURN_IF_ERROR(cell.Validate());
  }
  const RngStream root(seed);

  LabeledDataset real = real_train;
  if (config.real_train_size > 0 && config.real_train_size < real.size()) {
    RngStream pick = root.Fork(1);
    std::vector<int64_t> rows(real.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), pick.engine());
    rows.resize(config.real_train_size);
    std::sort(rows.begin(), rows.end());
    real = Subset(real_train, rows);
  }
  const std::vector<int64_t> real_counts = real.ClassCounts();

  std::vector<MixingRow> rows;
  rows.reserve(config.cells.size());
  for (size_t i = 0; i < config.cells.size(); ++i) {
    const MixingConfig& cell = config.cells[i];
    const std::vector<int64_t> counts = SyntheticCounts(cell, real_counts);
    LabeledDataset synthetic;
    synthetic.num_classes = real.num_classes;
    synthetic.samples.resize(0, real.dim());
    RngStream draw = root.Fork(2 + i);
    for (int c = 0; c < real.num_classes; ++c) {
      if (counts[c] == 0) continue;
      ASSIGN_OR_RETURN(nn::Matrix x, nn::GenerateSamples(class_generators[c],
                                                         draw, counts[c]));
      LabeledDataset part{std::move(x), std::vector<int>(counts[c], c),
                          real.num_classes};
      ASSIGN_OR_RETURN(synthetic, Concat(synthetic, part));
    }
    ASSIGN_OR_RETURN(LabeledDataset train, Concat(real, synthetic));
    RngStream trainer = root.Fork(0);
    ASSIGN_OR_RETURN(nn::NetworkParameters net,
                     TrainClassifier(train, config.classifier, trainer));
    MixingRow row;
    row.mixing = cell;
    row.real_size = real.size();
    row.synthetic_size = synthetic.size();
    ASSIGN_OR_RETURN(row.metrics, Evaluate(net, test));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string MixingCsv(const std::vector<MixingRow>& rows) {
  std::string out =
      "ratio,per_class,real_size,synthetic_size,train_size,accuracy";
  const int classes = rows.empty() ? 0 : rows.front().metrics.num_classes();
  for (int c = 0; c < classes; ++c) {
    absl::StrAppend(&out, ",precision_", c, ",sensitivity_", c, ",f1_", c,
                    ",undefined_", c);
  }
  out += "\n";
  for (const MixingRow& row : rows) {
    absl::StrAppend(&out, FormatDouble(row.mixing.ratio), ",",
                    row.mixing.per_class ? "true" : "false", ",",
                    row.real_size, ",", row.synthetic_size, ",",
                    row.train_size(), ",", FormatDouble(row.metrics.accuracy));
    const ClassMetrics& m = row.metrics;
    for (int c = 0; c < m.num_classes(); ++c) {
      std::string flags;
      if (m.precision_undefined[c]) flags += "p";
      if (m.sensitivity_undefined[c]) flags += "s";
      if (m.f1_undefined[c]) flags += "f";
      absl::StrAppend(&out, ",", FormatDouble(m.precision[c]), ",",
                      FormatDouble(m.sensitivity[c]), ",",
                      FormatDouble(m.f1[c]), ",", flags);
    }
    out += "\n";
  }
  return out;
}

std::string ConfusionCsv(const ConfusionMatrix& confusion) {
  std::string out = "true_class";
  for (int64_t c = 0; c < confusion.cols(); ++c) {
    absl::StrAppend(&out, ",pred_", c);
  }
  out += "\n";
  for (int64_t r = 0; r < confusion.rows(); ++r) {
    absl::StrAppend(&out, r);
    for (int64_t c = 0; c < confusion.cols(); ++c) {
      absl::StrAppend(&out, ",", confusion(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace fedgan::eval
