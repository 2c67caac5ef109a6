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

// Per-step Gaussian gradient perturbation (DP-SGD) around the engine's SGD
// update:  theta <- theta - rate * (clip(g, C) + zeta),  zeta ~ N(0, s^2 I).
//
// The noise scale s follows the classical Gaussian mechanism for an L2
// sensitivity of C:  s = C * sqrt(2 ln(1.25 / delta)) / epsilon.

#ifndef FEDGAN_PRIVACY_DP_H_
#define FEDGAN_PRIVACY_DP_H_

#include <optional>

#include "absl/status/statusor.h"
#include "fedgan/nn/gan.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::privacy {

struct DpConfig {
  // Per-step privacy budget.
  double epsilon = 0.3;
  double delta = 1e-5;
  // L2 bound applied to each minibatch gradient.
  double clip_norm = 1.0;
  // When set, used verbatim instead of the calibrated scale. Zero is allowed
  // and disables the noise.
  std::optional<double> explicit_noise_std;

  absl::Status Validate() const;
};

// Scales `grads` down to norm `clip_norm` when it exceeds it.
nn::GradientSet ClipGradient(const nn::GradientSet& grads, double clip_norm);

double NoiseStdFromEpsilon(const DpConfig& config);

absl::StatusOr<nn::NetworkParameters> DpStep(const nn::NetworkParameters& params,
                                             const nn::GradientSet& grads,
                                             double rate,
                                             const DpConfig& config,
                                             RngStream& rng);

// An updater for nn::LocalUpdate that applies DpStep with the given stream.
// `rng` must outlive the returned callable.
nn::ParameterUpdater DpUpdater(const DpConfig& config, RngStream& rng);

// Naive sequential composition: steps x per-step epsilon. Reported only.
double NaiveComposedEpsilon(const DpConfig& config, int64_t steps);

}  // namespace fedgan::privacy

#endif  // FEDGAN_PRIVACY_DP_H_
