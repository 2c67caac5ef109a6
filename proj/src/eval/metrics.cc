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

#include "fedgan/eval/metrics.h"

#include "absl/strings/str_cat.h"

namespace fedgan::eval {

double ClassMetrics::MacroF1() const {
  if (f1.empty()) return 0.0;
  double sum = 0.0;
  for (double v : f1) sum += v;
  return sum / static_cast<double>(f1.size());
}

absl::StatusOr<ClassMetrics> MetricsFromConfusion(
    const ConfusionMatrix& confusion) {
  if (confusion.rows() == 0 || confusion.rows() != confusion.cols()) {
    return absl::InvalidArgumentError("confusion matrix must be square");
  }
  if ((confusion.array() < 0).any()) {
    return absl::InvalidArgumentError("confusion counts must be >= 0");
  }
  const int64_t k = confusion.rows();
  ClassMetrics m;
  m.confusion = confusion;
  m.precision.assign(k, 0.0);
  m.sensitivity.assign(k, 0.0);
  m.f1.assign(k, 0.0);
  m.precision_undefined.assign(k, false);
  m.sensitivity_undefined.assign(k, false);
  m.f1_undefined.assign(k, false);
  for (int64_t c = 0; c < k; ++c) {
    const auto tp = static_cast<double>(confusion(c, c));
    const auto predicted = static_cast<double>(confusion.col(c).sum());
    const auto actual = static_cast<double>(confusion.row(c).sum());
    if (predicted > 0) {
      m.precision[c] = tp / predicted;
    } else {
      m.precision_undefined[c] = true;
    }
    if (actual > 0) {
      m.sensitivity[c] = tp / actual;
    } else {
      m.sensitivity_undefined[c] = true;
    }
    if (m.precision_undefined[c] || m.sensitivity_undefined[c]) {
      m.f1_undefined[c] = true;
    } else if (m.precision[c] + m.sensitivity[c] > 0.0) {
      m.f1[c] = 2.0 * m.precision[c] * m.sensitivity[c] /
                (m.precision[c] + m.sensitivity[c]);
    }
  }
  const int64_t total = confusion.sum();
  m.accuracy = total > 0 ? static_cast<double>(confusion.trace()) /
                               static_cast<double>(total)
                         : 0.0;
  return m;
}

absl::StatusOr<ClassMetrics> MetricsFromPredictions(
    const std::vector<int>& truth, const std::vector<int>& predicted,
    int num_classes) {
  if (truth.size() != predicted.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        truth.size(), " labels but ", predicted.size(), " predictions"));
  }
  if (num_classes < 1) {
    return absl::InvalidArgumentError("num_classes must be >= 1");
  }
  ConfusionMatrix confusion = ConfusionMatrix::Zero(num_classes, num_classes);
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_classes || predicted[i] < 0 ||
        predicted[i] >= num_classes) {
      return absl::InvalidArgumentError(
          absl::StrCat("label out of range at index ", i));
    }
    ++confusion(truth[i], predicted[i]);
  }
  return MetricsFromConfusion(confusion);
}

MicroAverage MicroAveraged(const ConfusionMatrix& confusion) {
  const auto tp = static_cast<double>(confusion.trace());
  const auto total = static_cast<double>(confusion.sum());
  // Pooled over classes, FP and FN both equal the off-diagonal mass.
  double fp = 0.0, fn = 0.0;
  for (int64_t c = 0; c < confusion.rows(); ++c) {
    fp += static_cast<double>(confusion.col(c).sum() - confusion(c, c));
    fn += static_cast<double>(confusion.row(c).sum() - confusion(c, c));
  }
  MicroAverage out;
  if (total > 0) {
    out.precision = tp / (tp + fp);
    out.sensitivity = tp / (tp + fn);
  }
  return out;
}

}  // namespace fedgan::eval
