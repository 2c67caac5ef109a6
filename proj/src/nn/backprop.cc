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

#include "fedgan/nn/backprop.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::nn {
namespace {

// dLoss/dPre given dLoss/dOut for one layer's activation.
Matrix ActivationBackward(const Matrix& pre, const Activation& activation,
                          const Matrix& out_gradient) {
  switch (activation.kind) {
    case ActivationKind::kIdentity:
      return out_gradient;
    case ActivationKind::kLeakyRelu: {
      const double slope = activation.slope;
      Matrix local = pre.unaryExpr(
          [slope](double x) { return x > 0.0 ? 1.0 : slope; });
      return out_gradient.cwiseProduct(local);
    }
    case ActivationKind::kSigmoid: {
      const Matrix s = Activate(pre, activation);
      return out_gradient.cwiseProduct(
          s.cwiseProduct((Matrix::Ones(s.rows(), s.cols()) - s)));
    }
    case ActivationKind::kTanh: {
      const Matrix t = Activate(pre, activation);
      return out_gradient.cwiseProduct(
          (Matrix::Ones(t.rows(), t.cols()) - t.cwiseProduct(t)));
    }
    case ActivationKind::kSoftmax: {
      const Matrix s = Activate(pre, activation);
      Matrix grad(s.rows(), s.cols());
      for (int64_t r = 0; r < s.rows(); ++r) {
        const double dot = out_gradient.row(r).dot(s.row(r));
        for (int64_t c = 0; c < s.cols(); ++c) {
          grad(r, c) = s(r, c) * (out_gradient(r, c) - dot);
        }
      }
      return grad;
    }
  }
  return out_gradient;
}

double ClampProbability(double d) {
  return std::clamp(d, kOutputClip, 1.0 - kOutputClip);
}

bool HasSigmoidScalarOutput(const NetworkParameters& net) {
  return net.output_dim() == 1 &&
         net.layers().back().activation.kind == ActivationKind::kSigmoid;
}

struct OutputLoss {
  double loss = 0.0;
  // dLoss/dPre of the last layer when `fused`, otherwise dLoss/dOutput.
  Matrix gradient;
  bool fused = false;
};

absl::StatusOr<OutputLoss> DiscriminatorOutputLoss(
    const NetworkParameters& net, const Matrix& out,
    const std::vector<int>& is_real) {
  if (out.cols() != 1) {
    return absl::InvalidArgumentError(
        "discriminator loss needs a single-output network");
  }
  if (static_cast<int64_t>(is_real.size()) != out.rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "discriminator loss has ", is_real.size(), " labels for ", out.rows(),
        " rows"));
  }
  const int64_t num_real = std::count(is_real.begin(), is_real.end(), 1);
  const int64_t num_fake = static_cast<int64_t>(is_real.size()) - num_real;
  if (num_real == 0 || num_fake == 0) {
    return absl::InvalidArgumentError(
        "discriminator loss needs both real and generated rows");
  }
  OutputLoss result;
  result.fused = HasSigmoidScalarOutput(net);
  result.gradient.resize(out.rows(), 1);
  for (int64_t r = 0; r < out.rows(); ++r) {
    const double d = out(r, 0);
    const double dc = ClampProbability(d);
    if (is_real[r] == 1) {
      const double k = static_cast<double>(num_real);
      result.loss -= std::log(dc) / k;
      result.gradient(r, 0) =
          result.fused ? -(1.0 - d) / k : -1.0 / (k * std::max(d, kOutputClip));
    } else {
      const double k = static_cast<double>(num_fake);
      result.loss -= std::log1p(-dc) / k;
      result.gradient(r, 0) =
          result.fused ? d / k
                       : 1.0 / (k * std::max(1.0 - d, kOutputClip));
    }
  }
  return result;
}

OutputLoss GeneratorOutputLoss(const NetworkParameters& disc,
                               const Matrix& out, GeneratorLossForm form) {
  OutputLoss result;
  result.fused = HasSigmoidScalarOutput(disc);
  result.gradient.resize(out.rows(), 1);
  const double k = static_cast<double>(out.rows());
  for (int64_t r = 0; r < out.rows(); ++r) {
    const double d = out(r, 0);
    const double dc = ClampProbability(d);
    if (form == GeneratorLossForm::kSaturating) {
      result.loss += std::log1p(-dc) / k;
      result.gradient(r, 0) =
          result.fused ? -d / k : -1.0 / (k * std::max(1.0 - d, kOutputClip));
    } else {
      result.loss -= std::log(dc) / k;
      result.gradient(r, 0) =
          result.fused ? -(1.0 - d) / k : -1.0 / (k * std::max(d, kOutputClip));
    }
  }
  return result;
}

absl::StatusOr<OutputLoss> CrossEntropyOutputLoss(
    const NetworkParameters& net, const Matrix& out,
    const std::vector<int>& labels) {
  if (net.layers().back().activation.kind != ActivationKind::kSoftmax) {
    return absl::InvalidArgumentError(
        "cross-entropy loss needs a softmax output layer");
  }
  if (static_cast<int64_t>(labels.size()) != out.rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cross-entropy loss has ", labels.size(), " labels for ", out.rows(),
        " rows"));
  }
  OutputLoss result;
  result.fused = true;
  result.gradient = out;
  const double k = static_cast<double>(out.rows());
  for (int64_t r = 0; r < out.rows(); ++r) {
    const int y = labels[r];
    if (y < 0 || y >= out.cols()) {
      return absl::InvalidArgumentError(
          absl::StrCat("label ", y, " outside [0, ", out.cols(), ")"));
    }
    result.loss -= std::log(std::max(out(r, y), 1e-300)) / k;
    result.gradient(r, y) -= 1.0;
  }
  result.gradient /= k;
  return result;
}

BackpropOutput FromOutputLoss(const NetworkParameters& net,
                              const ForwardCache& cache,
                              const OutputLoss& loss) {
  return loss.fused ? BackpropFromLastPreActivation(net, cache, loss.gradient)
                    : BackpropFromOutput(net, cache, loss.gradient);
}

}  // namespace

std::string_view LossTagName(LossTag tag) {
  switch (tag) {
    case LossTag::kDiscriminator:
      return "disc-loss";
    case LossTag::kGenerator:
      return "gen-loss";
    case LossTag::kClassifierCrossEntropy:
      return "classifier-ce";
  }
  return "unknown";
}

absl::StatusOr<LossTag> ParseLossTag(std::string_view name) {
  for (LossTag tag : {LossTag::kDiscriminator, LossTag::kGenerator,
                      LossTag::kClassifierCrossEntropy}) {
    if (LossTagName(tag) == name) return tag;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown loss tag: ", std::string(name)));
}

LossTag TagOf(const LossSpec& loss) {
  switch (loss.index()) {
    case 0:
      return LossTag::kDiscriminator;
    case 1:
      return LossTag::kGenerator;
    default:
      return LossTag::kClassifierCrossEntropy;
  }
}

BackpropOutput BackpropFromLastPreActivation(const NetworkParameters& net,
                                             const ForwardCache& cache,
                                             const Matrix& last_pre_gradient) {
  BackpropOutput result;
  result.gradients.layers.resize(net.num_layers());
  Matrix pre_gradient = last_pre_gradient;
  for (size_t i = net.num_layers(); i-- > 0;) {
    const Layer& layer = net.layer(i);
    const Matrix& input = cache.inputs[i];
    LayerGradient& g = result.gradients.layers[i];
    g.weight = pre_gradient.transpose() * input;
    g.bias = pre_gradient.colwise().sum().transpose();
    Matrix input_gradient = pre_gradient * layer.weight;
    if (i == 0) {
      result.input_gradient = std::move(input_gradient);
      break;
    }
    const Matrix& mask = cache.dropout_masks[i - 1];
    if (mask.size() > 0) input_gradient = input_gradient.cwiseProduct(mask);
    pre_gradient = ActivationBackward(cache.pre_activations[i - 1],
                                      net.layer(i - 1).activation,
                                      input_gradient);
  }
  return result;
}

BackpropOutput BackpropFromOutput(const NetworkParameters& net,
                                  const ForwardCache& cache,
                                  const Matrix& output_gradient) {
  const size_t last = net.num_layers() - 1;
  Matrix grad = output_gradient;
  const Matrix& mask = cache.dropout_masks[last];
  if (mask.size() > 0) grad = grad.cwiseProduct(mask);
  return BackpropFromLastPreActivation(
      net, cache,
      ActivationBackward(cache.pre_activations[last],
                         net.layer(last).activation, grad));
}

absl::StatusOr<BackwardResult> Backward(const NetworkParameters& net,
                                        const Matrix& batch,
                                        const LossSpec& loss,
                                        const DropoutOptions& dropout) {
  ASSIGN_OR_RETURN(ForwardCache cache, ForwardWithCache(net, batch, dropout));
  BackwardResult result;
  if (const auto* d = std::get_if<DiscriminatorLoss>(&loss)) {
    ASSIGN_OR_RETURN(OutputLoss out,
                     DiscriminatorOutputLoss(net, cache.output(), d->is_real));
    result.loss = out.loss;
    result.gradients = FromOutputLoss(net, cache, out).gradients;
  } else if (const auto* g = std::get_if<GeneratorLoss>(&loss)) {
    if (g->discriminator == nullptr) {
      return absl::InvalidArgumentError("generator loss needs a discriminator");
    }
    const NetworkParameters& disc = *g->discriminator;
    if (disc.output_dim() != 1) {
      return absl::InvalidArgumentError(
          "generator loss needs a single-output discriminator");
    }
    ASSIGN_OR_RETURN(ForwardCache disc_cache,
                     ForwardWithCache(disc, cache.output()));
    OutputLoss out = GeneratorOutputLoss(disc, disc_cache.output(), g->form);
    result.loss = out.loss;
    const BackpropOutput through_disc = FromOutputLoss(disc, disc_cache, out);
    result.gradients =
        BackpropFromOutput(net, cache, through_disc.input_gradient).gradients;
  } else {
    const auto& ce = std::get<CrossEntropyLoss>(loss);
    ASSIGN_OR_RETURN(OutputLoss out,
                     CrossEntropyOutputLoss(net, cache.output(), ce.labels));
    result.loss = out.loss;
    result.gradients = FromOutputLoss(net, cache, out).gradients;
  }
  return result;
}

absl::StatusOr<double> EvaluateLoss(const NetworkParameters& net,
                                    const Matrix& batch,
                                    const LossSpec& loss) {
  ASSIGN_OR_RETURN(BackwardResult result, Backward(net, batch, loss));
  return result.loss;
}

}  // namespace fedgan::nn
