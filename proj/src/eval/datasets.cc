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

#include "fedgan/eval/datasets.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::eval {

std::vector<int64_t> LabeledDataset::ClassCounts() const {
  std::vector<int64_t> counts(std::max(num_classes, 0), 0);
  for (int label : labels) {
    if (label >= 0 && label < num_classes) ++counts[label];
  }
  return counts;
}

nn::Matrix LabeledDataset::ClassSamples(int c) const {
  std::vector<int64_t> rows;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == c) rows.push_back(static_cast<int64_t>(i));
  }
  nn::Matrix out(static_cast<int64_t>(rows.size()), samples.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = samples.row(rows[i]);
  return out;
}

absl::Status LabeledDataset::Validate() const {
  if (static_cast<int64_t>(labels.size()) != samples.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat(samples.rows(), " samples but ", labels.size(),
                     " labels"));
  }
  if (num_classes < 1) {
    return absl::InvalidArgumentError("num_classes must be >= 1");
  }
  for (int label : labels) {
    if (label < 0 || label >= num_classes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label ", label, " outside [0, ", num_classes, ")"));
    }
  }
  if (!samples.allFinite()) {
    return absl::InvalidArgumentError("samples contain non-finite values");
  }
  return absl::OkStatus();
}

LabeledDataset Subset(const LabeledDataset& data,
                      std::span<const int64_t> rows) {
  LabeledDataset out;
  out.num_classes = data.num_classes;
  out.samples.resize(static_cast<int64_t>(rows.size()), data.samples.cols());
  out.labels.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.samples.row(i) = data.samples.row(rows[i]);
    out.labels.push_back(data.labels[rows[i]]);
  }
  return out;
}

absl::StatusOr<LabeledDataset> Concat(const LabeledDataset& a,
                                      const LabeledDataset& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot concatenate widths ", a.dim(), " and ", b.dim()));
  }
  LabeledDataset out;
  out.num_classes = std::max(a.num_classes, b.num_classes);
  out.samples.resize(a.size() + b.size(), a.dim());
  out.samples.topRows(a.size()) = a.samples;
  out.samples.bottomRows(b.size()) = b.samples;
  out.labels = a.labels;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  return out;
}

absl::StatusOr<LabeledDataset> MakeBlobs(std::span<const int64_t> counts,
                                         RngStream& rng, double radius,
                                         double stddev) {
  if (counts.empty()) return absl::InvalidArgumentError("no classes");
  if (!(stddev > 0.0)) {
    return absl::InvalidArgumentError("stddev must be > 0");
  }
  int64_t total = 0;
  for (int64_t c : counts) {
    if (c < 0) return absl::InvalidArgumentError("class counts must be >= 0");
    total += c;
  }
  const int classes = static_cast<int>(counts.size());
  LabeledDataset out;
  out.num_classes = classes;
  out.samples.resize(total, 2);
  out.labels.reserve(total);
  int64_t row = 0;
  for (int c = 0; c < classes; ++c) {
    const double angle = 2.0 * std::numbers::pi * c / classes;
    const double cx = radius * std::cos(angle);
    const double cy = radius * std::sin(angle);
    for (int64_t i = 0; i < counts[c]; ++i) {
      out.samples(row, 0) = rng.Gaussian(cx, stddev);
      out.samples(row, 1) = rng.Gaussian(cy, stddev);
      out.labels.push_back(c);
      ++row;
    }
  }
  return out;
}

absl::StatusOr<nn::Matrix> GaussianMixture::Sample(RngStream& rng,
                                                   int64_t count) const {
  if (means.empty()) return absl::InvalidArgumentError("mixture has no means");
  if (count < 0) return absl::InvalidArgumentError("count must be >= 0");
  const int64_t dim = means.front().size();
  nn::Matrix out(count, dim);
  for (int64_t i = 0; i < count; ++i) {
    const nn::Vector& mu = means[rng.UniformIndex(means.size())];
    for (int64_t d = 0; d < dim; ++d) {
      out(i, d) = rng.Gaussian(mu(d), stddev);
    }
  }
  return out;
}

GaussianMixture DefaultGaussianMixture() {
  GaussianMixture m;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    nn::Vector mu(2);
    mu << 1.5 * std::cos(angle), 1.5 * std::sin(angle);
    m.means.push_back(mu);
  }
  m.stddev = 0.5;
  return m;
}

ClassCountPreset DarkCovidPreset() {
  return {"darkcovid",
          {"covid-19", "normal", "pneumonia"},
          {150, 232, 238},
          {500, 500, 500}};
}

ClassCountPreset ChestCovidPreset() {
  return {"chestcovid",
          {"covid-19", "normal", "pneumonia"},
          {223, 421, 306},
          {800, 800, 800}};
}

absl::StatusOr<ClassCountPreset> ClassCountPresetByName(
    std::string_view name) {
  if (name == "darkcovid") return DarkCovidPreset();
  if (name == "chestcovid") return ChestCovidPreset();
  return absl::NotFoundError(absl::StrCat(
      "unknown class-count preset \"", std::string(name),
      "\" (expected darkcovid or chestcovid)"));
}

std::vector<int64_t> ScaleCounts(std::span<const int64_t> counts,
                                 double factor) {
  std::vector<int64_t> out;
  out.reserve(counts.size());
  for (int64_t c : counts) {
    out.push_back(std::max<int64_t>(
        1, static_cast<int64_t>(std::llround(static_cast<double>(c) * factor))));
  }
  return out;
}

absl::StatusOr<Split> StratifiedSplit(const LabeledDataset& data,
                                      double test_fraction, RngStream& rng) {
  RETURN_IF_ERROR(data.Validate());
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
    return absl::InvalidArgumentError("test_fraction must lie in [0, 1]");
  }
  std::vector<int64_t> train_rows, test_rows;
  for (int c = 0; c < data.num_classes; ++c) {
    std::vector<int64_t> rows;
    for (size_t i = 0; i < data.labels.size(); ++i) {
      if (data.labels[i] == c) rows.push_back(static_cast<int64_t>(i));
    }
    std::shuffle(rows.begin(), rows.end(), rng.engine());
    const auto n_test = static_cast<size_t>(
        std::llround(test_fraction * static_cast<double>(rows.size())));
    test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + n_test);
    train_rows.insert(train_rows.end(), rows.begin() + n_test, rows.end());
  }
  return Split{Subset(data, train_rows), Subset(data, test_rows)};
}

}  // namespace fedgan::eval
