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

#ifndef FEDGAN_EVAL_CLASSIFIER_H_
#define FEDGAN_EVAL_CLASSIFIER_H_

#include <vector>

#include "absl/status/statusor.h"
#include "fedgan/eval/datasets.h"
#include "fedgan/eval/metrics.h"
#include "fedgan/nn/network.h"
#include "fedgan/util/rng.h"

namespace fedgan::eval {

struct ClassifierConfig {
  int epochs = 200;
  double learning_rate = 0.001;
  int minibatch_size = 32;
  int hidden_units = 16;
  int hidden_layers = 1;

  absl::Status Validate() const;
};

// The reference learning rate, 0.001, moves a small MLP very slowly under
// plain SGD; toy runs use this one.
inline constexpr double kToyClassifierLearningRate = 0.05;

// Softmax MLP initialized from `rng`, then trained with minibatch SGD on the
// cross-entropy loss. Each epoch visits the data once in a fresh shuffle.
absl::StatusOr<nn::NetworkParameters> TrainClassifier(
    const LabeledDataset& train, const ClassifierConfig& config,
    RngStream& rng);

// Argmax over the softmax outputs.
absl::StatusOr<std::vector<int>> Predict(const nn::NetworkParameters& net,
                                         const nn::Matrix& samples);

absl::StatusOr<ClassMetrics> Evaluate(const nn::NetworkParameters& net,
                                      const LabeledDataset& test);

}  // namespace fedgan::eval

#endif  // FEDGAN_EVAL_CLASSIFIER_H_
