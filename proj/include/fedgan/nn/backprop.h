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

// Reverse-mode gradients for the three losses used in the project.

#ifndef FEDGAN_NN_BACKPROP_H_
#define FEDGAN_NN_BACKPROP_H_

#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/nn/network.h"

namespace fedgan::nn {

// Discriminator outputs are clamped to [kOutputClip, 1 - kOutputClip] inside
// the log terms of the adversarial losses. Gradients pass through the clamp.
inline constexpr double kOutputClip = 1e-7;

enum class LossTag { kDiscriminator, kGenerator, kClassifierCrossEntropy };

std::string_view LossTagName(LossTag tag);
absl::StatusOr<LossTag> ParseLossTag(std::string_view name);

// ln(1 - D(G(z))) is the saturating form of the generator objective;
// -ln D(G(z)) is the common non-saturating substitute.
enum class GeneratorLossForm { kSaturating, kNonSaturating };

// Discriminator loss on a batch mixing real (label 1) and generated (label 0)
// rows:
//   -(1/k_real) sum_real ln D(x) - (1/k_fake) sum_fake ln(1 - D(x)).
// With k_real = k_fake = k this is the negated minibatch value estimate that
// the discriminator ascends.
struct DiscriminatorLoss {
  std::vector<int> is_real;
};

// Generator loss on a noise batch, through a frozen discriminator:
//   saturating:      (1/k) sum ln(1 - D(G(z)))
//   non-saturating: -(1/k) sum ln D(G(z))
struct GeneratorLoss {
  const NetworkParameters* discriminator = nullptr;
  GeneratorLossForm form = GeneratorLossForm::kSaturating;
};

// Mean negative log-likelihood of `labels` under a softmax output layer.
struct CrossEntropyLoss {
  std::vector<int> labels;
};

using LossSpec = std::variant<DiscriminatorLoss, GeneratorLoss, CrossEntropyLoss>;

LossTag TagOf(const LossSpec& loss);

struct BackwardResult {
  GradientSet gradients;
  double loss = 0.0;
};

// Exact gradients of `loss` with respect to every weight and bias of `net`,
// evaluated on `batch`.
absl::StatusOr<BackwardResult> Backward(const NetworkParameters& net,
                                        const Matrix& batch,
                                        const LossSpec& loss,
                                        const DropoutOptions& dropout = {});

// Loss value only; same definitions as Backward.
absl::StatusOr<double> EvaluateLoss(const NetworkParameters& net,
                                    const Matrix& batch, const LossSpec& loss);

struct BackpropOutput {
  GradientSet gradients;
  // dLoss/dInput, one row per sample.
  Matrix input_gradient;
};

// Propagates dLoss/dOutput back through a cached forward pass.
BackpropOutput BackpropFromOutput(const NetworkParameters& net,
                                  const ForwardCache& cache,
                                  const Matrix& output_gradient);

// Same, but starting from dLoss/dPreActivation of the last layer (used where
// the output activation is fused with the loss).
BackpropOutput BackpropFromLastPreActivation(const NetworkParameters& net,
                                             const ForwardCache& cache,
                                             const Matrix& last_pre_gradient);

}  // namespace fedgan::nn

#endif  // FEDGAN_NN_BACKPROP_H_
