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

#ifndef FEDGAN_UTIL_RNG_H_
#define FEDGAN_UTIL_RNG_H_

#include <cstdint>
#include <random>

namespace fedgan {

// A seeded pseudo-random stream. Every stochastic operation in the project
// draws from an explicit RngStream so that a (seed, config) pair fully
// determines the output.
//
// Fork() derives an independent child stream from the construction seed and a
// stream id only; it does not depend on how many values have been drawn, so
// per-client or per-cell streams stay stable when unrelated code changes.
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  uint64_t seed() const { return seed_; }

  RngStream Fork(uint64_t stream_id) const;

  double Gaussian();
  double Gaussian(double mean, double stddev);
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n).
  uint64_t UniformIndex(uint64_t n);
  uint64_t NextU64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
uint64_t MixSeed(uint64_t x);

}  // namespace fedgan

#endif  // FEDGAN_UTIL_RNG_H_
