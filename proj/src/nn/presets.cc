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

#include "fedgan/nn/presets.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fedgan::nn {

GanArchitecture ToyGanArchitecture(int64_t data_dim, int64_t noise_dim,
                                   int64_t hidden) {
  GanArchitecture arch;
  arch.discriminator.input_dim = data_dim;
  arch.discriminator.layers = {{hidden, Activation::LeakyRelu()},
                               {hidden, Activation::LeakyRelu()},
                               {1, Activation::Sigmoid()}};
  arch.generator.input_dim = noise_dim;
  arch.generator.layers = {{hidden, Activation::LeakyRelu()},
                           {hidden, Activation::LeakyRelu()},
                           {data_dim, Activation::Identity()}};
  arch.minibatch_size = 32;
  return arch;
}

GanArchitecture FullScaleGanArchitecture() {
  constexpr int64_t kImagePixels = 64 * 64;
  GanArchitecture arch;
  arch.discriminator.input_dim = kImagePixels;
  for (int i = 0; i < 5; ++i) {
    arch.discriminator.layers.push_back({128, Activation::LeakyRelu()});
  }
  arch.discriminator.layers.push_back({1, Activation::Sigmoid()});
  arch.generator.input_dim = 64;
  for (int64_t units : {256, 256, 256, 128, 128}) {
    arch.generator.layers.push_back({units, Activation::LeakyRelu()});
  }
  arch.generator.layers.push_back({kImagePixels, Activation::Tanh()});
  arch.minibatch_size = 32;
  return arch;
}

Topology ClassifierTopology(int64_t input_dim, int64_t num_classes,
                            int64_t hidden, int hidden_layers) {
  Topology topology;
  topology.input_dim = input_dim;
  for (int i = 0; i < hidden_layers; ++i) {
    topology.layers.push_back({hidden, Activation::LeakyRelu()});
  }
  topology.layers.push_back({num_classes, Activation::Softmax()});
  return topology;
}

absl::StatusOr<GanArchitecture> GanArchitectureByName(std::string_view name,
                                                      int64_t data_dim,
                                                      int64_t noise_dim) {
  if (name == "toy") return ToyGanArchitecture(data_dim, noise_dim);
  if (name == "full-scale") return FullScaleGanArchitecture();
  return absl::InvalidArgumentError(
      absl::StrCat("unknown architecture preset: ", std::string(name)));
}

}  // namespace fedgan::nn
