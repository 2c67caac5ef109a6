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

#include "fedgan/eval/empirical.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "fedgan/divergence/divergence.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::eval {
namespace {

constexpr int64_t kMaxCells = int64_t{1} << 22;

std::vector<double> SmoothedHistogram(const nn::Matrix& x,
                                      const nn::Vector& lo,
                                      const nn::Vector& width, int bins,
                                      int64_t cells) {
  std::vector<double> counts(cells, 1.0);
  for (int64_t i = 0; i < x.rows(); ++i) {
    int64_t cell = 0;
    for (int64_t d = 0; d < x.cols(); ++d) {
      auto b = static_cast<int64_t>(std::floor((x(i, d) - lo(d)) / width(d)));
      b = std::clamp<int64_t>(b, 0, bins - 1);
      cell = cell * bins + b;
    }
    counts[cell] += 1.0;
  }
  const double total = static_cast<double>(x.rows() + cells);
  for (double& c : counts) c /= total;
  return counts;
}

}  // namespace

absl::StatusOr<double> EmpiricalJsd(const nn::Matrix& real,
                                    const nn::Matrix& generated, int bins) {
  if (real.rows() == 0 || generated.rows() == 0) {
    return absl::InvalidArgumentError("empirical JSD needs non-empty samples");
  }
  if (real.cols() != generated.cols() || real.cols() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample widths differ: ", real.cols(), " vs ", generated.cols()));
  }
  if (bins < 2) return absl::InvalidArgumentError("bins must be >= 2");
  if (!real.allFinite() || !generated.allFinite()) {
    return absl::InvalidArgumentError("samples contain non-finite values");
  }
  const int64_t dim = real.cols();
  int64_t cells = 1;
  for (int64_t d = 0; d < dim; ++d) {
    if (cells > kMaxCells / bins) {
      return absl::InvalidArgumentError(absl::StrCat(
          bins, " bins over ", dim, " dimensions exceeds the grid limit"));
    }
    cells *= bins;
  }
  const nn::Vector lo =
      real.colwise().minCoeff().cwiseMin(generated.colwise().minCoeff());
  const nn::Vector hi =
      real.colwise().maxCoeff().cwiseMax(generated.colwise().maxCoeff());
  nn::Vector width = (hi - lo) / static_cast<double>(bins);
  for (int64_t d = 0; d < dim; ++d) {
    if (!(width(d) > 0.0)) width(d) = 1.0;
  }
  ASSIGN_OR_RETURN(auto p, divergence::DiscreteDistribution::Create(
                               SmoothedHistogram(real, lo, width, bins, cells)));
  ASSIGN_OR_RETURN(
      auto q, divergence::DiscreteDistribution::Create(
                  SmoothedHistogram(generated, lo, width, bins, cells)));
  return divergence::JensenShannon(p, q);
}

}  // namespace fedgan::eval
