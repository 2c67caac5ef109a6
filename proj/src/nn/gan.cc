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

#include "fedgan/nn/gan.h"

#include <algorithm>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::nn {
namespace {

absl::StatusOr<NetworkParameters> Update(const StepOptions& options,
                                         const NetworkParameters& params,
                                         const GradientSet& grads,
                                         double rate) {
  absl::StatusOr<NetworkParameters> next =
      options.updater != nullptr ? (*options.updater)(params, grads, rate)
                                 : ApplySgd(params, grads, rate);
  if (next.ok() && !next->AllFinite()) {
    return absl::OutOfRangeError(
        "update produced non-finite parameters; training diverged");
  }
  return next;
}

absl::Status CheckPair(const NetworkParameters& disc,
                       const NetworkParameters& gen) {
  if (gen.output_dim() != disc.input_dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "generator emits ", gen.output_dim(), " features but discriminator ",
        "expects ", disc.input_dim()));
  }
  if (disc.output_dim() != 1) {
    return absl::InvalidArgumentError("discriminator must have one output");
  }
  return absl::OkStatus();
}

Matrix GatherRows(const Matrix& source, std::span<const int64_t> rows) {
  Matrix out(static_cast<int64_t>(rows.size()), source.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = source.row(rows[i]);
  return out;
}

}  // namespace

absl::Status TrainingHyperparams::Validate() const {
  if (local_epochs < 0) {
    return absl::InvalidArgumentError("local_epochs must be >= 0");
  }
  if (minibatch_size < 1) {
    return absl::InvalidArgumentError("minibatch_size must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be > 0");
  }
  if (noise_dim < 1) {
    return absl::InvalidArgumentError("noise_dim must be >= 1");
  }
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
    return absl::InvalidArgumentError("dropout_rate must lie in [0, 1)");
  }
  return absl::OkStatus();
}

ParameterUpdater SgdUpdater() {
  return [](const NetworkParameters& params, const GradientSet& grads,
            double rate) { return ApplySgd(params, grads, rate); };
}

absl::StatusOr<Matrix> SampleNoise(RngStream& rng, int64_t k, int64_t dim) {
  if (k < 1 || dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise batch needs k >= 1 and dim >= 1, got ", k, "x",
                     dim));
  }
  Matrix noise(k, dim);
  // Filled row by row so a prefix of a larger draw matches a smaller one.
  for (int64_t r = 0; r < k; ++r) {
    for (int64_t c = 0; c < dim; ++c) noise(r, c) = rng.Gaussian();
  }
  return noise;
}

absl::StatusOr<StepResult> DiscriminatorStep(const NetworkParameters& disc,
                                             const NetworkParameters& gen,
                                             const Matrix& real,
                                             const Matrix& noise, double rate,
                                             const StepOptions& options) {
  RETURN_IF_ERROR(CheckPair(disc, gen));
  RETURN_IF_ERROR(CheckMinibatch(real, disc.input_dim()));
  RETURN_IF_ERROR(CheckMinibatch(noise, gen.input_dim()));
  if (real.rows() != noise.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("real batch has ", real.rows(), " rows, noise batch ",
                     noise.rows()));
  }
  ASSIGN_OR_RETURN(Matrix fake, Forward(gen, noise));
  if (!fake.allFinite()) {
    return absl::OutOfRangeError(
        "generator output is non-finite; training diverged");
  }
  Matrix batch(real.rows() + fake.rows(), real.cols());
  batch << real, fake;
  DiscriminatorLoss loss;
  loss.is_real.assign(real.rows(), 1);
  loss.is_real.resize(batch.rows(), 0);
  ASSIGN_OR_RETURN(BackwardResult grad,
                   Backward(disc, batch, loss, options.dropout));
  // Descending the negated value is ascending the value.
  ASSIGN_OR_RETURN(NetworkParameters next,
                   Update(options, disc, grad.gradients, rate));
  return StepResult{std::move(next), -grad.loss};
}

absl::StatusOr<StepResult> GeneratorStep(const NetworkParameters& disc,
                                         const NetworkParameters& gen,
                                         const Matrix& noise, double rate,
                                         const StepOptions& options) {
  RETURN_IF_ERROR(CheckPair(disc, gen));
  RETURN_IF_ERROR(CheckMinibatch(noise, gen.input_dim()));
  GeneratorLoss loss{&disc, options.generator_loss};
  ASSIGN_OR_RETURN(BackwardResult grad, Backward(gen, noise, loss));
  ASSIGN_OR_RETURN(NetworkParameters next,
                   Update(options, gen, grad.gradients, rate));
  return StepResult{std::move(next), grad.loss};
}

absl::StatusOr<LocalUpdateResult> LocalUpdate(
    const Matrix& shard, const NetworkParameters& global_disc,
    const NetworkParameters& global_gen, const TrainingHyperparams& hp,
    RngStream& rng, const ParameterUpdater& disc_updater,
    const ParameterUpdater& gen_updater) {
  RETURN_IF_ERROR(hp.Validate());
  RETURN_IF_ERROR(CheckPair(global_disc, global_gen));
  if (global_gen.input_dim() != hp.noise_dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("generator input ", global_gen.input_dim(),
                     " does not match noise_dim ", hp.noise_dim));
  }
  if (shard.rows() == 0) {
    return absl::InvalidArgumentError("client shard is empty");
  }
  RETURN_IF_ERROR(CheckMinibatch(shard, global_disc.input_dim()));

  LocalUpdateResult result{global_disc, global_gen, {}};
  StepOptions options;
  options.updater = &gen_updater;
  options.generator_loss = hp.generator_loss;
  StepOptions disc_options = options;
  disc_options.updater = &disc_updater;
  disc_options.dropout = {hp.dropout_rate, &rng};

  std::vector<int64_t> order(shard.rows());
  for (int epoch = 0; epoch < hp.local_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    double disc_sum = 0.0;
    double gen_sum = 0.0;
    int batches = 0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(hp.minibatch_size)) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(hp.minibatch_size));
      const Matrix real = GatherRows(
          shard, std::span<const int64_t>(order).subspan(start, end - start));
      const int64_t k = real.rows();
      ASSIGN_OR_RETURN(Matrix disc_noise, SampleNoise(rng, k, hp.noise_dim));
      ASSIGN_OR_RETURN(StepResult d,
                       DiscriminatorStep(result.disc, result.gen, real,
                                         disc_noise, hp.learning_rate,
                                         disc_options));
      result.disc = std::move(d.params);
      ASSIGN_OR_RETURN(Matrix gen_noise, SampleNoise(rng, k, hp.noise_dim));
      ASSIGN_OR_RETURN(StepResult g,
                       GeneratorStep(result.disc, result.gen, gen_noise,
                                     hp.learning_rate, options));
      result.gen = std::move(g.params);
      disc_sum += d.loss;
      gen_sum += g.loss;
      ++batches;
    }
    result.trace.push_back({disc_sum / batches, gen_sum / batches});
  }
  return result;
}

absl::StatusOr<Matrix> GenerateSamples(const NetworkParameters& gen,
                                       RngStream& rng, int64_t count) {
  if (count < 0) {
    return absl::InvalidArgumentError("sample count must be >= 0");
  }
  if (count == 0) return Matrix(0, gen.output_dim());
  ASSIGN_OR_RETURN(Matrix noise, SampleNoise(rng, count, gen.input_dim()));
  return Forward(gen, noise);
}

}  // namespace fedgan::nn
