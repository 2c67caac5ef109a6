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

// Shared generators for randomized tests.

#ifndef FEDGAN_TESTS_SUPPORT_GENERATORS_H_
#define FEDGAN_TESTS_SUPPORT_GENERATORS_H_

#include <cmath>
#include <vector>

#include "fedgan/divergence/divergence.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::testing {

// Random point on the simplex. With `allow_zeros`, each coordinate is zeroed
// with probability 1/4 (at least one stays positive).
inline divergence::DiscreteDistribution RandomDistribution(
    RngStream& rng, size_t size, bool allow_zeros = false) {
  std::vector<double> w(size);
  double total = 0.0;
  for (size_t i = 0; i < size; ++i) {
    w[i] = -std::log(rng.Uniform(1e-12, 1.0));
    if (allow_zeros && rng.Uniform(0.0, 1.0) < 0.25) w[i] = 0.0;
    total += w[i];
  }
  if (total == 0.0) {
    w[rng.UniformIndex(size)] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return divergence::DiscreteDistribution::Create(std::move(w)).value();
}

inline nn::Matrix RandomMatrix(RngStream& rng, int64_t rows, int64_t cols,
                               double scale = 1.0) {
  nn::Matrix m(rows, cols);
  for (int64_t i = 0; i < m.size(); ++i) m(i) = rng.Gaussian(0.0, scale);
  return m;
}

}  // namespace fedgan::testing

#endif  // FEDGAN_TESTS_SUPPORT_GENERATORS_H_
