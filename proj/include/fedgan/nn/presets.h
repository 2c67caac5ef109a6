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

// Named network architectures.

#ifndef FEDGAN_NN_PRESETS_H_
#define FEDGAN_NN_PRESETS_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "fedgan/nn/network.h"

namespace fedgan::nn {

struct GanArchitecture {
  Topology discriminator;
  Topology generator;
  int minibatch_size = 32;
};

// Desk-scale default: two hidden layers of `hidden` leaky-ReLU units in each
// network, sigmoid discriminator output, identity generator output.
GanArchitecture ToyGanArchitecture(int64_t data_dim, int64_t noise_dim = 2,
                                   int64_t hidden = 32);

// Full-scale dense analogue of the X-ray experiments: 64x64 inputs, a
// discriminator with five 128-unit leaky-ReLU layers, a generator taking
// 64-dimensional noise through 256-256-256-128-128 units to a tanh image.
// Shipped for documentation and shape checks; too large for the test suite.
GanArchitecture FullScaleGanArchitecture();

// Softmax classifier with `hidden` leaky-ReLU units per hidden layer.
Topology ClassifierTopology(int64_t input_dim, int64_t num_classes,
                            int64_t hidden = 16, int hidden_layers = 1);

absl::StatusOr<GanArchitecture> GanArchitectureByName(std::string_view name,
                                                      int64_t data_dim,
                                                      int64_t noise_dim);

}  // namespace fedgan::nn

#endif  // FEDGAN_NN_PRESETS_H_
