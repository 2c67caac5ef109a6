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

// One institution's adversarial training: discriminator ascent, generator
// descent, and the local update loop run between global rounds.

#ifndef FEDGAN_NN_GAN_H_
#define FEDGAN_NN_GAN_H_

#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/nn/backprop.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::nn {

struct TrainingHyperparams {
  // Local epochs L per global round.
  int local_epochs = 1;
  // Minibatch size k.
  int minibatch_size = 32;
  // SGD learning rate.
  double learning_rate = 0.05;
  int noise_dim = 2;
  // Hidden-layer dropout in the discriminator; 0 disables it.
  double dropout_rate = 0.0;
  GeneratorLossForm generator_loss = GeneratorLossForm::kSaturating;

  absl::Status Validate() const;
};

// Maps (params, gradient, rate) to updated params. Plain SGD by default; the
// privacy module supplies a perturbed variant.
using ParameterUpdater = std::function<absl::StatusOr<NetworkParameters>(
    const NetworkParameters&, const GradientSet&, double)>;

ParameterUpdater SgdUpdater();

// k i.i.d. standard-normal rows of width `dim`.
absl::StatusOr<Matrix> SampleNoise(RngStream& rng, int64_t k, int64_t dim);

struct StepResult {
  NetworkParameters params;
  // Discriminator step: the pre-step minibatch estimate of the value
  //   (1/k) sum_j [ln D(x_j) + ln(1 - D(G(z_j)))].
  // Generator step: the pre-step generator loss.
  double loss = 0.0;
};

struct StepOptions {
  // nullptr means plain SGD.
  const ParameterUpdater* updater = nullptr;
  DropoutOptions dropout;
  GeneratorLossForm generator_loss = GeneratorLossForm::kSaturating;
};

// One ascent step of the discriminator on the value estimate.
absl::StatusOr<StepResult> DiscriminatorStep(const NetworkParameters& disc,
                                             const NetworkParameters& gen,
                                             const Matrix& real,
                                             const Matrix& noise, double rate,
                                             const StepOptions& options = {});

// One descent step of the generator through the frozen discriminator.
absl::StatusOr<StepResult> GeneratorStep(const NetworkParameters& disc,
                                         const NetworkParameters& gen,
                                         const Matrix& noise, double rate,
                                         const StepOptions& options = {});

struct EpochLoss {
  // Mean discriminator value estimate over the epoch's minibatches.
  double disc_objective = 0.0;
  // Mean generator loss over the epoch's minibatches.
  double gen_loss = 0.0;
};

struct LocalUpdateResult {
  NetworkParameters disc;
  NetworkParameters gen;
  std::vector<EpochLoss> trace;
};

// Runs `hp.local_epochs` passes over `shard`, starting from the given global
// parameters. Each pass shuffles the shard and, per minibatch, takes one
// discriminator step followed by one generator step on fresh noise.
// A step whose result is non-finite fails with kOutOfRange, which marks a
// diverged run rather than a caller error.
//
// `disc_updater` applies the discriminator steps and `gen_updater` the
// generator steps; both default to plain SGD.
absl::StatusOr<LocalUpdateResult> LocalUpdate(
    const Matrix& shard, const NetworkParameters& global_disc,
    const NetworkParameters& global_gen, const TrainingHyperparams& hp,
    RngStream& rng, const ParameterUpdater& disc_updater = SgdUpdater(),
    const ParameterUpdater& gen_updater = SgdUpdater());

// Pushes `count` noise rows through the generator. count = 0 yields an empty
// 0 x output_dim matrix.
absl::StatusOr<Matrix> GenerateSamples(const NetworkParameters& gen,
                                       RngStream& rng, int64_t count);

}  // namespace fedgan::nn

#endif  // FEDGAN_NN_GAN_H_
