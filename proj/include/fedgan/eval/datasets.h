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

// Toy datasets standing in for the three-class X-ray data, and the class-count
// presets of the two original datasets.

#ifndef FEDGAN_EVAL_DATASETS_H_
#define FEDGAN_EVAL_DATASETS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::eval {

struct LabeledDataset {
  nn::Matrix samples;
  std::vector<int> labels;
  int num_classes = 0;

  int64_t size() const { return samples.rows(); }
  int64_t dim() const { return samples.cols(); }
  std::vector<int64_t> ClassCounts() const;
  // Rows of class `c`, in dataset order.
  nn::Matrix ClassSamples(int c) const;

  absl::Status Validate() const;
};

LabeledDataset Subset(const LabeledDataset& data,
                      std::span<const int64_t> rows);
absl::StatusOr<LabeledDataset> Concat(const LabeledDataset& a,
                                      const LabeledDataset& b);

// Isotropic 2-D Gaussian blobs, one per class, with centres evenly spaced on
// a circle of `radius`. counts[c] samples of class c, grouped by class.
absl::StatusOr<LabeledDataset> MakeBlobs(std::span<const int64_t> counts,
                                         RngStream& rng, double radius = 2.5,
                                         double stddev = 1.0);

struct GaussianMixture {
  std::vector<nn::Vector> means;
  double stddev = 1.0;

  // Equal-weight mixture.
  absl::StatusOr<nn::Matrix> Sample(RngStream& rng, int64_t count) const;
};

// Three components evenly spaced on a circle of radius 1.5, stddev 0.5.
GaussianMixture DefaultGaussianMixture();

struct ClassCountPreset {
  std::string name;
  std::vector<std::string> classes;
  std::vector<int64_t> original;
  std::vector<int64_t> synthetic;
};

ClassCountPreset DarkCovidPreset();
ClassCountPreset ChestCovidPreset();
absl::StatusOr<ClassCountPreset> ClassCountPresetByName(std::string_view name);

// round(count * factor), at least 1 per class.
std::vector<int64_t> ScaleCounts(std::span<const int64_t> counts,
                                 double factor);

struct Split {
  LabeledDataset train;
  LabeledDataset test;
};

// Per-class shuffle; the first round(test_fraction * n_c) rows of each class
// go to test.
absl::StatusOr<Split> StratifiedSplit(const LabeledDataset& data,
                                      double test_fraction, RngStream& rng);

}  // namespace fedgan::eval

#endif  // FEDGAN_EVAL_DATASETS_H_
