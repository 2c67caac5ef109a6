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

#ifndef FEDGAN_EVAL_METRICS_H_
#define FEDGAN_EVAL_METRICS_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace fedgan::eval {

// confusion(i, j) counts test samples of true class i predicted as j.
using ConfusionMatrix =
    Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Zero-denominator precision or sensitivity is reported as 0 with its
// `undefined` flag set; F1 is undefined (and 0) unless both are defined.
struct ClassMetrics {
  ConfusionMatrix confusion;
  std::vector<double> precision;
  std::vector<double> sensitivity;
  std::vector<double> f1;
  std::vector<bool> precision_undefined;
  std::vector<bool> sensitivity_undefined;
  std::vector<bool> f1_undefined;
  double accuracy = 0.0;

  int num_classes() const { return static_cast<int>(confusion.rows()); }
  // Mean F1 over classes, counting undefined entries as 0.
  double MacroF1() const;
};

absl::StatusOr<ClassMetrics> MetricsFromConfusion(
    const ConfusionMatrix& confusion);

// Builds the confusion matrix from paired labels.
absl::StatusOr<ClassMetrics> MetricsFromPredictions(
    const std::vector<int>& truth, const std::vector<int>& predicted,
    int num_classes);

struct MicroAverage {
  double precision = 0.0;
  double sensitivity = 0.0;
};

// Pooled TP / (TP + FP) and TP / (TP + FN) over all classes.
MicroAverage MicroAveraged(const ConfusionMatrix& confusion);

}  // namespace fedgan::eval

#endif  // FEDGAN_EVAL_METRICS_H_
