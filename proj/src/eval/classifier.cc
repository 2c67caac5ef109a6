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

#include "fedgan/eval/classifier.h"

#include <algorithm>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "fedgan/nn/backprop.h"
#include "fedgan/nn/presets.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::eval {

absl::Status ClassifierConfig::Validate() const {
  if (epochs < 0) return absl::InvalidArgumentError("epochs must be >= 0");
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be > 0");
  }
  if (minibatch_size < 1) {
    return absl::InvalidArgumentError("minibatch_size must be >= 1");
  }
  if (hidden_units < 1 || hidden_layers < 0) {
    return absl::InvalidArgumentError(
        "hidden_units must be >= 1 and hidden_layers >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<nn::NetworkParameters> TrainClassifier(
    const LabeledDataset& train, const ClassifierConfig& config,
    RngStream& rng) {
  RETURN_IF_ERROR(config.Validate());
  RETURN_IF_ERROR(train.Validate());
  if (train.size() == 0) {
    return absl::InvalidArgumentError("training set is empty");
  }
  if (train.num_classes < 2) {
    return absl::InvalidArgumentError("a classifier needs >= 2 classes");
  }
  ASSIGN_OR_RETURN(
      nn::NetworkParameters net,
      nn::NetworkParameters::Initialize(
          nn::ClassifierTopology(train.dim(), train.num_classes,
                                 config.hidden_units, config.hidden_layers),
          rng));
  std::vector<int64_t> order(train.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(config.minibatch_size)) {
      const size_t end = std::min(
          order.size(), start + static_cast<size_t>(config.minibatch_size));
      nn::Matrix batch(static_cast<int64_t>(end - start), train.dim());
      nn::CrossEntropyLoss loss;
      loss.labels.reserve(end - start);
      for (size_t i = start; i < end; ++i) {
        batch.row(i - start) = train.samples.row(order[i]);
        loss.labels.push_back(train.labels[order[i]]);
      }
      ASSIGN_OR_RETURN(nn::BackwardResult grad,
                       nn::Backward(net, batch, std::move(loss)));
      ASSIGN_OR_RETURN(net,
                       nn::ApplySgd(net, grad.gradients, config.learning_rate));
    }
  }
  return net;
}

absl::StatusOr<std::vector<int>> Predict(const nn::NetworkParameters& net,
                                         const nn::Matrix& samples) {
  std::vector<int> out;
  if (samples.rows() == 0) return out;
  ASSIGN_OR_RETURN(nn::Matrix probs, nn::Forward(net, samples));
  out.reserve(samples.rows());
  for (int64_t i = 0; i < probs.rows(); ++i) {
    Eigen::Index best;
    probs.row(i).maxCoeff(&best);
    out.push_back(static_cast<int>(best));
  }
  return out;
}

absl::StatusOr<ClassMetrics> Evaluate(const nn::NetworkParameters& net,
                                      const LabeledDataset& test) {
  RETURN_IF_ERROR(test.Validate());
  if (net.input_dim() != test.dim() && test.size() > 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "classifier expects width ", net.input_dim(), ", test set has ",
        test.dim()));
  }
  if (net.output_dim() != test.num_classes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "classifier has ", net.output_dim(), " outputs for ",
        test.num_classes, " classes"));
  }
  ASSIGN_OR_RETURN(std::vector<int> predicted, Predict(net, test.samples));
  return MetricsFromPredictions(test.labels, predicted, test.num_classes);
}

}  // namespace fedgan::eval
