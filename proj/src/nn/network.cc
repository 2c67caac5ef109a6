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

#include "fedgan/nn/network.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::nn {
namespace {

double Sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

bool IsHidden(size_t layer, size_t num_layers) {
  return layer + 1 < num_layers;
}

}  // namespace

std::string_view ActivationName(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::kIdentity:
      return "identity";
    case ActivationKind::kLeakyRelu:
      return "leaky-relu";
    case ActivationKind::kSigmoid:
      return "sigmoid";
    case ActivationKind::kTanh:
      return "tanh";
    case ActivationKind::kSoftmax:
      return "softmax";
  }
  return "unknown";
}

absl::StatusOr<ActivationKind> ParseActivationKind(std::string_view name) {
  for (ActivationKind kind :
       {ActivationKind::kIdentity, ActivationKind::kLeakyRelu,
        ActivationKind::kSigmoid, ActivationKind::kTanh,
        ActivationKind::kSoftmax}) {
    if (ActivationName(kind) == name) return kind;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown activation: ", std::string(name)));
}

absl::StatusOr<NetworkParameters> NetworkParameters::Create(
    std::vector<Layer> layers) {
  if (layers.empty()) {
    return absl::InvalidArgumentError("network needs at least one layer");
  }
  for (size_t i = 0; i < layers.size(); ++i) {
    const Layer& layer = layers[i];
    if (layer.weight.rows() == 0 || layer.weight.cols() == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("layer ", i, " has an empty weight matrix"));
    }
    if (layer.bias.size() != layer.weight.rows()) {
      return absl::InvalidArgumentError(
          absl::StrCat("layer ", i, " bias has ", layer.bias.size(),
                       " entries, expected ", layer.weight.rows()));
    }
    if (i > 0 && layer.weight.cols() != layers[i - 1].weight.rows()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "layer ", i, " expects input ", layer.weight.cols(),
          " but layer ", i - 1, " produces ", layers[i - 1].weight.rows()));
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      return absl::InvalidArgumentError(
          absl::StrCat("layer ", i, " has non-finite entries"));
    }
  }
  return NetworkParameters(std::move(layers));
}

absl::StatusOr<NetworkParameters> NetworkParameters::Initialize(
    const Topology& topology, RngStream& rng) {
  if (topology.input_dim <= 0 || topology.layers.empty()) {
    return absl::InvalidArgumentError("topology needs an input and a layer");
  }
  std::vector<Layer> layers;
  int64_t in = topology.input_dim;
  for (const LayerSpec& spec : topology.layers) {
    if (spec.units <= 0) {
      return absl::InvalidArgumentError("layer units must be positive");
    }
    const double stddev =
        std::sqrt(2.0 / static_cast<double>(in + spec.units));
    Layer layer;
    layer.weight.resize(spec.units, in);
    for (int64_t r = 0; r < spec.units; ++r) {
      for (int64_t c = 0; c < in; ++c) {
        layer.weight(r, c) = rng.Gaussian(0.0, stddev);
      }
    }
    layer.bias = Vector::Zero(spec.units);
    layer.activation = spec.activation;
    layers.push_back(std::move(layer));
    in = spec.units;
  }
  return Create(std::move(layers));
}

int64_t NetworkParameters::input_dim() const {
  return layers_.empty() ? 0 : layers_.front().in_dim();
}

int64_t NetworkParameters::output_dim() const {
  return layers_.empty() ? 0 : layers_.back().out_dim();
}

int64_t NetworkParameters::num_parameters() const {
  int64_t n = 0;
  for (const Layer& layer : layers_) {
    n += layer.weight.size() + layer.bias.size();
  }
  return n;
}

bool NetworkParameters::SameShape(const NetworkParameters& other) const {
  if (layers_.size() != other.layers_.size()) return false;
  for (size_t i = 0; i < layers_.size(); ++i) {
    const Layer& a = layers_[i];
    const Layer& b = other.layers_[i];
    if (a.weight.rows() != b.weight.rows() ||
        a.weight.cols() != b.weight.cols() || !(a.activation == b.activation)) {
      return false;
    }
  }
  return true;
}

bool NetworkParameters::AllFinite() const {
  for (const Layer& layer : layers_) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

bool operator==(const NetworkParameters& a, const NetworkParameters& b) {
  if (!a.SameShape(b)) return false;
  for (size_t i = 0; i < a.layers_.size(); ++i) {
    if (a.layers_[i].weight != b.layers_[i].weight ||
        a.layers_[i].bias != b.layers_[i].bias) {
      return false;
    }
  }
  return true;
}

GradientSet GradientSet::ZerosLike(const NetworkParameters& net) {
  GradientSet grads;
  for (const Layer& layer : net.layers()) {
    grads.layers.push_back(
        {Matrix::Zero(layer.out_dim(), layer.in_dim()),
         Vector::Zero(layer.out_dim())});
  }
  return grads;
}

double GradientSet::SquaredNorm() const {
  double total = 0.0;
  for (const LayerGradient& g : layers) {
    total += g.weight.squaredNorm() + g.bias.squaredNorm();
  }
  return total;
}

double GradientSet::Norm() const { return std::sqrt(SquaredNorm()); }

void GradientSet::Scale(double factor) {
  for (LayerGradient& g : layers) {
    g.weight *= factor;
    g.bias *= factor;
  }
}

bool GradientSet::AllFinite() const {
  for (const LayerGradient& g : layers) {
    if (!g.weight.allFinite() || !g.bias.allFinite()) return false;
  }
  return true;
}

bool GradientSet::CongruentWith(const NetworkParameters& net) const {
  if (layers.size() != net.num_layers()) return false;
  for (size_t i = 0; i < layers.size(); ++i) {
    const Layer& layer = net.layer(i);
    if (layers[i].weight.rows() != layer.weight.rows() ||
        layers[i].weight.cols() != layer.weight.cols() ||
        layers[i].bias.size() != layer.bias.size()) {
      return false;
    }
  }
  return true;
}

int64_t GradientSet::num_entries() const {
  int64_t n = 0;
  for (const LayerGradient& g : layers) n += g.weight.size() + g.bias.size();
  return n;
}

std::vector<double> FlattenParameters(const NetworkParameters& net) {
  std::vector<double> flat;
  flat.reserve(net.num_parameters());
  for (const Layer& layer : net.layers()) {
    for (int64_t r = 0; r < layer.weight.rows(); ++r) {
      for (int64_t c = 0; c < layer.weight.cols(); ++c) {
        flat.push_back(layer.weight(r, c));
      }
    }
    for (int64_t r = 0; r < layer.bias.size(); ++r) flat.push_back(layer.bias(r));
  }
  return flat;
}

absl::Status AssignFlatParameters(std::span<const double> flat,
                                  NetworkParameters& net) {
  if (static_cast<int64_t>(flat.size()) != net.num_parameters()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", net.num_parameters(), " values, got ",
                     flat.size()));
  }
  size_t k = 0;
  for (Layer& layer : net.mutable_layers()) {
    for (int64_t r = 0; r < layer.weight.rows(); ++r) {
      for (int64_t c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = flat[k++];
      }
    }
    for (int64_t r = 0; r < layer.bias.size(); ++r) layer.bias(r) = flat[k++];
  }
  return absl::OkStatus();
}

std::vector<double> FlattenGradient(const GradientSet& grads) {
  std::vector<double> flat;
  flat.reserve(grads.num_entries());
  for (const LayerGradient& g : grads.layers) {
    for (int64_t r = 0; r < g.weight.rows(); ++r) {
      for (int64_t c = 0; c < g.weight.cols(); ++c) {
        flat.push_back(g.weight(r, c));
      }
    }
    for (int64_t r = 0; r < g.bias.size(); ++r) flat.push_back(g.bias(r));
  }
  return flat;
}

absl::Status CheckMinibatch(const Matrix& batch, int64_t expected_dim) {
  if (batch.rows() == 0) {
    return absl::InvalidArgumentError("minibatch must contain a sample");
  }
  if (batch.cols() != expected_dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample dimension ", batch.cols(), ", expected ",
                     expected_dim));
  }
  if (!batch.allFinite()) {
    return absl::InvalidArgumentError("minibatch has non-finite entries");
  }
  return absl::OkStatus();
}

Matrix Activate(const Matrix& pre, const Activation& activation) {
  switch (activation.kind) {
    case ActivationKind::kIdentity:
      return pre;
    case ActivationKind::kLeakyRelu: {
      const double slope = activation.slope;
      return pre.unaryExpr([slope](double x) { return x > 0.0 ? x : slope * x; });
    }
    case ActivationKind::kSigmoid:
      return pre.unaryExpr([](double x) { return Sigmoid(x); });
    case ActivationKind::kTanh:
      return pre.array().tanh().matrix();
    case ActivationKind::kSoftmax: {
      Matrix out(pre.rows(), pre.cols());
      for (int64_t r = 0; r < pre.rows(); ++r) {
        const double max = pre.row(r).maxCoeff();
        double total = 0.0;
        for (int64_t c = 0; c < pre.cols(); ++c) {
          out(r, c) = std::exp(pre(r, c) - max);
          total += out(r, c);
        }
        out.row(r) /= total;
      }
      return out;
    }
  }
  return pre;
}

absl::StatusOr<ForwardCache> ForwardWithCache(const NetworkParameters& net,
                                              const Matrix& batch,
                                              const DropoutOptions& dropout) {
  RETURN_IF_ERROR(CheckMinibatch(batch, net.input_dim()));
  if (dropout.rate < 0.0 || dropout.rate >= 1.0) {
    return absl::InvalidArgumentError("dropout rate must lie in [0, 1)");
  }
  if (dropout.rate > 0.0 && dropout.rng == nullptr) {
    return absl::InvalidArgumentError("dropout requires an rng stream");
  }
  ForwardCache cache;
  cache.inputs.reserve(net.num_layers() + 1);
  cache.inputs.push_back(batch);
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const Layer& layer = net.layer(l);
    Matrix pre = cache.inputs.back() * layer.weight.transpose();
    pre.rowwise() += layer.bias.transpose();
    Matrix out = Activate(pre, layer.activation);
    Matrix mask;
    if (dropout.rate > 0.0 && IsHidden(l, net.num_layers())) {
      const double keep_scale = 1.0 / (1.0 - dropout.rate);
      mask.resize(out.rows(), out.cols());
      for (int64_t i = 0; i < mask.size(); ++i) {
        mask(i) = dropout.rng->Uniform(0.0, 1.0) < dropout.rate ? 0.0
                                                                 : keep_scale;
      }
      out = out.cwiseProduct(mask);
    }
    cache.pre_activations.push_back(std::move(pre));
    cache.dropout_masks.push_back(std::move(mask));
    cache.inputs.push_back(std::move(out));
  }
  return cache;
}

absl::StatusOr<Matrix> Forward(const NetworkParameters& net,
                               const Matrix& batch) {
  ASSIGN_OR_RETURN(ForwardCache cache, ForwardWithCache(net, batch));
  return std::move(cache.inputs.back());
}

absl::StatusOr<NetworkParameters> ApplySgd(const NetworkParameters& net,
                                           const GradientSet& grads,
                                           double rate) {
  if (!grads.CongruentWith(net)) {
    return absl::InvalidArgumentError(
        "gradient set is not shape-congruent with the network");
  }
  NetworkParameters next = net;
  for (size_t l = 0; l < next.num_layers(); ++l) {
    Layer& layer = next.mutable_layers()[l];
    layer.weight -= rate * grads.layers[l].weight;
    layer.bias -= rate * grads.layers[l].bias;
  }
  return next;
}

}  // namespace fedgan::nn
