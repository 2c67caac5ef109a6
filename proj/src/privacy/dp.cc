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

#include "fedgan/privacy/dp.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::privacy {

absl::Status DpConfig::Validate() const {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_norm must be > 0, got ", clip_norm));
  }
  if (explicit_noise_std.has_value() &&
      !(*explicit_noise_std >= 0.0 && std::isfinite(*explicit_noise_std))) {
    return absl::InvalidArgumentError("explicit_noise_std must be >= 0");
  }
  return absl::OkStatus();
}

nn::GradientSet ClipGradient(const nn::GradientSet& grads, double clip_norm) {
  const double norm = grads.Norm();
  if (norm <= clip_norm) return grads;
  nn::GradientSet clipped = grads;
  clipped.Scale(clip_norm / norm);
  return clipped;
}

double NoiseStdFromEpsilon(const DpConfig& config) {
  if (config.explicit_noise_std.has_value()) return *config.explicit_noise_std;
  return config.clip_norm * std::sqrt(2.0 * std::log(1.25 / config.delta)) /
         config.epsilon;
}

absl::StatusOr<nn::NetworkParameters> DpStep(const nn::NetworkParameters& params,
                                             const nn::GradientSet& grads,
                                             double rate,
                                             const DpConfig& config,
                                             RngStream& rng) {
  RETURN_IF_ERROR(config.Validate());
  if (!grads.CongruentWith(params)) {
    return absl::InvalidArgumentError(
        "gradient set is not shape-congruent with the parameters");
  }
  nn::GradientSet noisy = ClipGradient(grads, config.clip_norm);
  const double stddev = NoiseStdFromEpsilon(config);
  if (stddev > 0.0) {
    for (nn::LayerGradient& layer : noisy.layers) {
      for (int64_t i = 0; i < layer.weight.size(); ++i) {
        layer.weight(i) += rng.Gaussian(0.0, stddev);
      }
      for (int64_t i = 0; i < layer.bias.size(); ++i) {
        layer.bias(i) += rng.Gaussian(0.0, stddev);
      }
    }
  }
  return nn::ApplySgd(params, noisy, rate);
}

nn::ParameterUpdater DpUpdater(const DpConfig& config, RngStream& rng) {
  return [config, &rng](const nn::NetworkParameters& params,
                        const nn::GradientSet& grads, double rate) {
    return DpStep(params, grads, rate, config, rng);
  };
}

double NaiveComposedEpsilon(const DpConfig& config, int64_t steps) {
  return config.epsilon * static_cast<double>(steps);
}

}  // namespace fedgan::privacy
