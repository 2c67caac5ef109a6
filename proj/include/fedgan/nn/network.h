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

// Small dense feed-forward networks: parameter containers, forward evaluation
// with an optional activation cache, and gradient containers.

#ifndef FEDGAN_NN_NETWORK_H_
#define FEDGAN_NN_NETWORK_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "fedgan/util/rng.h"

namespace fedgan::nn {

// Row-major sample matrices: one sample per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::VectorXd;
// A batch of k >= 1 samples, one per row. Functions that consume a Minibatch
// reject k = 0 and non-finite entries.
using Minibatch = Matrix;

enum class ActivationKind : uint8_t {
  kIdentity = 0,
  kLeakyRelu = 1,
  kSigmoid = 2,
  kTanh = 3,
  kSoftmax = 4,
};

struct Activation {
  ActivationKind kind = ActivationKind::kIdentity;
  // Negative-side slope; only meaningful for kLeakyRelu.
  double slope = 0.0;

  static Activation Identity() { return {ActivationKind::kIdentity, 0.0}; }
  static Activation LeakyRelu(double slope = 0.2) {
    return {ActivationKind::kLeakyRelu, slope};
  }
  static Activation Sigmoid() { return {ActivationKind::kSigmoid, 0.0}; }
  static Activation Tanh() { return {ActivationKind::kTanh, 0.0}; }
  static Activation Softmax() { return {ActivationKind::kSoftmax, 0.0}; }

  friend bool operator==(const Activation&, const Activation&) = default;
};

std::string_view ActivationName(ActivationKind kind);
absl::StatusOr<ActivationKind> ParseActivationKind(std::string_view name);

// y = act(W x + b); W is [out x in].
struct Layer {
  Matrix weight;
  Vector bias;
  Activation activation;

  int64_t in_dim() const { return weight.cols(); }
  int64_t out_dim() const { return weight.rows(); }
};

struct LayerSpec {
  int64_t units = 0;
  Activation activation;
};

// Input width plus the ordered layer specs.
struct Topology {
  int64_t input_dim = 0;
  std::vector<LayerSpec> layers;
};

class NetworkParameters {
 public:
  NetworkParameters() = default;

  // Validates that layer dimensions chain, biases match, and every entry is
  // finite.
  static absl::StatusOr<NetworkParameters> Create(std::vector<Layer> layers);

  // Gaussian Glorot initialization, zero biases.
  static absl::StatusOr<NetworkParameters> Initialize(const Topology& topology,
                                                      RngStream& rng);

  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  const Layer& layer(size_t i) const { return layers_[i]; }
  size_t num_layers() const { return layers_.size(); }

  int64_t input_dim() const;
  int64_t output_dim() const;
  int64_t num_parameters() const;

  // True when both networks have the same layer count, layer shapes and
  // activations.
  bool SameShape(const NetworkParameters& other) const;
  bool AllFinite() const;

  friend bool operator==(const NetworkParameters& a,
                         const NetworkParameters& b);

 private:
  explicit NetworkParameters(std::vector<Layer> layers)
      : layers_(std::move(layers)) {}

  std::vector<Layer> layers_;
};

// Per-layer dLoss/dW and dLoss/db, shape-congruent with a network.
struct LayerGradient {
  Matrix weight;
  Vector bias;
};

struct GradientSet {
  std::vector<LayerGradient> layers;

  static GradientSet ZerosLike(const NetworkParameters& net);

  double SquaredNorm() const;
  double Norm() const;
  void Scale(double factor);
  bool AllFinite() const;
  bool CongruentWith(const NetworkParameters& net) const;
  int64_t num_entries() const;
};

// Parameters in a fixed order: each layer's weight (row-major) then bias.
std::vector<double> FlattenParameters(const NetworkParameters& net);
absl::Status AssignFlatParameters(std::span<const double> flat,
                                  NetworkParameters& net);
std::vector<double> FlattenGradient(const GradientSet& grads);

// Activations recorded during a forward pass, for reverse-mode differentiation.
struct ForwardCache {
  // inputs[l] is the matrix fed to layer l; inputs.back() is the output.
  std::vector<Matrix> inputs;
  // Pre-activations of each layer.
  std::vector<Matrix> pre_activations;
  // Inverted-dropout masks (already scaled by 1/(1-p)); empty when dropout is
  // off for that layer.
  std::vector<Matrix> dropout_masks;

  const Matrix& output() const { return inputs.back(); }
};

struct DropoutOptions {
  // Drop probability applied to hidden-layer outputs. 0 disables dropout.
  double rate = 0.0;
  RngStream* rng = nullptr;
};

absl::Status CheckMinibatch(const Matrix& batch, int64_t expected_dim);

// Applies each layer's affine map and activation in order.
absl::StatusOr<Matrix> Forward(const NetworkParameters& net,
                               const Matrix& batch);

absl::StatusOr<ForwardCache> ForwardWithCache(const NetworkParameters& net,
                                              const Matrix& batch,
                                              const DropoutOptions& dropout = {});

// Elementwise activation on a pre-activation matrix (softmax is row-wise).
Matrix Activate(const Matrix& pre, const Activation& activation);

// theta - rate * grad, layer by layer.
absl::StatusOr<NetworkParameters> ApplySgd(const NetworkParameters& net,
                                           const GradientSet& grads,
                                           double rate);

}  // namespace fedgan::nn

#endif  // FEDGAN_NN_NETWORK_H_
