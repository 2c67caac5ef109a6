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

#include "fedgan/util/rng.h"

namespace fedgan {

uint64_t MixSeed(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(uint64_t seed) : seed_(seed), engine_(MixSeed(seed)) {}

RngStream RngStream::Fork(uint64_t stream_id) const {
  return RngStream(MixSeed(seed_ ^ MixSeed(stream_id + 1)));
}

double RngStream::Gaussian() { return normal_(engine_); }

double RngStream::Gaussian(double mean, double stddev) {
  return mean + stddev * normal_(engine_);
}

double RngStream::Uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

uint64_t RngStream::UniformIndex(uint64_t n) {
  std::uniform_int_distribution<uint64_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace fedgan
