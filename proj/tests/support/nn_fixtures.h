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

// Network fixtures shared by the engine tests and the acceptance suite.

#ifndef FEDGAN_TESTS_SUPPORT_NN_FIXTURES_H_
#define FEDGAN_TESTS_SUPPORT_NN_FIXTURES_H_

#include <cmath>
#include <memory>
#include <vector>

#include "fedgan/nn/backprop.h"
#include "fedgan/nn/network.h"
#include "generators.h"

namespace fedgan::testing {

// A discriminator of the given topology whose last layer is zeroed, so it
// outputs sigmoid(0) = 1/2 on every input.
inline nn::NetworkParameters ConstantHalfDiscriminator(
    const nn::Topology& topology, RngStream& rng) {
  auto net = nn::NetworkParameters::Initialize(topology, rng).value();
  auto& last = net.mutable_layers().back();
  last.weight.setZero();
  last.bias.setZero();
  return net;
}

struct GradientCase {
  nn::NetworkParameters net;
  nn::Matrix batch;
  nn::LossSpec loss;
  // Owns the frozen discriminator referenced by a GeneratorLoss.
  std::shared_ptr<nn::NetworkParameters> discriminator;
};

inline nn::Activation RandomHiddenActivation(RngStream& rng) {
  switch (rng.UniformIndex(4)) {
    case 0:
      return nn::Activation::LeakyRelu(rng.Uniform(0.01, 0.3));
    case 1:
      return nn::Activation::Tanh();
    case 2:
      return nn::Activation::Sigmoid();
    default:
      return nn::Activation::Identity();
  }
}

// Random net with 1-3 layers of at most 16 units and the given head.
inline nn::NetworkParameters RandomNet(RngStream& rng, int64_t input_dim,
                                       nn::LayerSpec head) {
  nn::Topology topology;
  topology.input_dim = input_dim;
  const int hidden = static_cast<int>(rng.UniformIndex(3));
  for (int i = 0; i < hidden; ++i) {
    topology.layers.push_back({1 + static_cast<int64_t>(rng.UniformIndex(16)),
                               RandomHiddenActivation(rng)});
  }
  topology.layers.push_back(head);
  auto net = nn::NetworkParameters::Initialize(topology, rng).value();
  for (auto& layer : net.mutable_layers()) {
    for (int64_t i = 0; i < layer.bias.size(); ++i) {
      layer.bias(i) = rng.Gaussian(0.0, 0.3);
    }
  }
  return net;
}

// True when every leaky-ReLU pre-activation sits at least `margin` from the
// kink and no sigmoid head output is near the loss clamp.
inline bool AwayFromKinks(const nn::NetworkParameters& net,
                          const nn::Matrix& batch, double margin = 1e-2) {
  auto cache = nn::ForwardWithCache(net, batch).value();
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const auto& pre = cache.pre_activations[l];
    if (net.layer(l).activation.kind == nn::ActivationKind::kLeakyRelu &&
        pre.cwiseAbs().minCoeff() < margin) {
      return false;
    }
  }
  const auto& out = cache.output();
  if (net.layers().back().activation.kind == nn::ActivationKind::kSigmoid &&
      (out.minCoeff() < 1e-4 || out.maxCoeff() > 1.0 - 1e-4)) {
    return false;
  }
  return true;
}

inline GradientCase RandomGradientCase(RngStream& rng, nn::LossTag tag) {
  while (true) {
    GradientCase c;
    const int64_t dim = 1 + static_cast<int64_t>(rng.UniformIndex(4));
    const int64_t rows = 2 + static_cast<int64_t>(rng.UniformIndex(7));
    c.batch = RandomMatrix(rng, rows, dim);
    if (tag == nn::LossTag::kDiscriminator) {
      c.net = RandomNet(rng, dim, {1, nn::Activation::Sigmoid()});
      std::vector<int> is_real(rows, 0);
      for (int64_t r = 0; r < rows; ++r) is_real[r] = r % 2 == 0 ? 1 : 0;
      c.loss = nn::DiscriminatorLoss{is_real};
      if (!AwayFromKinks(c.net, c.batch)) continue;
    } else if (tag == nn::LossTag::kGenerator) {
      const int64_t data_dim = 1 + static_cast<int64_t>(rng.UniformIndex(4));
      c.net = RandomNet(rng, dim, {data_dim, nn::Activation::Identity()});
      c.discriminator = std::make_shared<nn::NetworkParameters>(
          RandomNet(rng, data_dim, {1, nn::Activation::Sigmoid()}));
      const auto form = rng.UniformIndex(2) == 0
                            ? nn::GeneratorLossForm::kSaturating
                            : nn::GeneratorLossForm::kNonSaturating;
      c.loss = nn::GeneratorLoss{c.discriminator.get(), form};
      if (!AwayFromKinks(c.net, c.batch)) continue;
      const nn::Matrix fake = nn::Forward(c.net, c.batch).value();
      if (!AwayFromKinks(*c.discriminator, fake)) continue;
    } else {
      const int64_t classes = 2 + static_cast<int64_t>(rng.UniformIndex(3));
      c.net = RandomNet(rng, dim, {classes, nn::Activation::Softmax()});
      std::vector<int> labels(rows);
      for (int& y : labels) y = static_cast<int>(rng.UniformIndex(classes));
      c.loss = nn::CrossEntropyLoss{labels};
      if (!AwayFromKinks(c.net, c.batch)) continue;
    }
    return c;
  }
}

}  // namespace fedgan::testing

#endif  // FEDGAN_TESTS_SUPPORT_NN_FIXTURES_H_
