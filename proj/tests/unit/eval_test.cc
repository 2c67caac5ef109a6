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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fedgan/eval/classifier.h"
#include "fedgan/eval/datasets.h"
#include "fedgan/eval/empirical.h"
#include "fedgan/eval/metrics.h"
#include "fedgan/eval/mixing.h"
#include "fedgan/nn/presets.h"
#include "fedgan/util/rng.h"
#include "generators.h"
#include "gtest/gtest.h"

namespace fedgan::eval {
namespace {

constexpr double kLn2 = std::numbers::ln2;

TEST(DatasetTest, BlobsShapeAndLabels) {
  RngStream rng(1);
  std::vector<int64_t> counts = {15, 50, 50};
  LabeledDataset d = MakeBlobs(counts, rng).value();
  EXPECT_TRUE(d.Validate().ok());
  EXPECT_EQ(d.size(), 115);
  EXPECT_EQ(d.ClassCounts(), counts);
  EXPECT_EQ(d.ClassSamples(0).rows(), 15);
}

TEST(DatasetTest, ValidateCatchesBadLabels) {
  LabeledDataset d{nn::Matrix::Zero(2, 2), {0, 3}, 3};
  EXPECT_FALSE(d.Validate().ok());
  d.labels = {0};
  EXPECT_FALSE(d.Validate().ok());
}

TEST(DatasetTest, PresetCounts) {
  ClassCountPreset dark = DarkCovidPreset();
  EXPECT_EQ(dark.original, (std::vector<int64_t>{150, 232, 238}));
  int64_t synthetic = 0;
  for (int64_t c : dark.synthetic) synthetic += c;
  EXPECT_EQ(synthetic, 1500);
  ClassCountPreset chest = ClassCountPresetByName("chestcovid").value();
  synthetic = 0;
  for (int64_t c : chest.synthetic) synthetic += c;
  EXPECT_EQ(synthetic, 2400);
  EXPECT_FALSE(ClassCountPresetByName("mnist").ok());
  EXPECT_EQ(ScaleCounts(dark.original, 0.1),
            (std::vector<int64_t>{15, 23, 24}));
}

TEST(DatasetTest, StratifiedSplitKeepsEveryRowOnce) {
  RngStream rng(2);
  std::vector<int64_t> counts = {20, 30, 40};
  LabeledDataset d = MakeBlobs(counts, rng).value();
  Split s = StratifiedSplit(d, 0.25, rng).value();
  EXPECT_EQ(s.train.size() + s.test.size(), d.size());
  EXPECT_EQ(s.test.ClassCounts(), (std::vector<int64_t>{5, 8, 10}));
}

TEST(DatasetTest, MixtureSampling) {
  RngStream rng(3);
  GaussianMixture mix = DefaultGaussianMixture();
  nn::Matrix x = mix.Sample(rng, 6000).value();
  EXPECT_EQ(x.rows(), 6000);
  EXPECT_NEAR(x.col(0).mean(), 0.0, 0.05);
  EXPECT_NEAR(x.col(1).mean(), 0.0, 0.05);
  std::vector<int> nearest(mix.means.size(), 0);
  for (int64_t i = 0; i < x.rows(); ++i) {
    size_t best = 0;
    for (size_t k = 1; k < mix.means.size(); ++k) {
      if ((x.row(i).transpose() - mix.means[k]).norm() <
          (x.row(i).transpose() - mix.means[best]).norm()) {
        best = k;
      }
    }
    ++nearest[best];
  }
  for (int n : nearest) EXPECT_NEAR(n / 6000.0, 1.0 / 3.0, 0.03);
}

TEST(EmpiricalJsdTest, IdenticalSetsNearZero) {
  RngStream rng(4);
  nn::Matrix x = testing::RandomMatrix(rng, 500, 2);
  EXPECT_LE(EmpiricalJsd(x, x).value(), 1e-6);
}

TEST(EmpiricalJsdTest, DisjointRangesNearLn2) {
  RngStream rng(5);
  nn::Matrix a(2000, 1), b(2000, 1);
  for (int64_t i = 0; i < 2000; ++i) {
    a(i, 0) = rng.Uniform(0.0, 1.0);
    b(i, 0) = rng.Uniform(2.0, 3.0);
  }
  const double jsd = EmpiricalJsd(a, b, 16).value();
  EXPECT_LT(jsd, kLn2);
  EXPECT_NEAR(jsd, kLn2, 0.05);
}

TEST(EmpiricalJsdTest, BoundedAndSymmetric) {
  RngStream rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    nn::Matrix a = testing::RandomMatrix(rng, 1 + rng.UniformIndex(200), 2);
    nn::Matrix b = testing::RandomMatrix(rng, 1 + rng.UniformIndex(200), 2,
                                         rng.Uniform(0.1, 5.0));
    const int bins = 2 + static_cast<int>(rng.UniformIndex(20));
    const double ab = EmpiricalJsd(a, b, bins).value();
    const double ba = EmpiricalJsd(b, a, bins).value();
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, kLn2);
    EXPECT_EQ(ab, ba);
  }
}

TEST(EmpiricalJsdTest, Errors) {
  nn::Matrix empty(0, 2), x = nn::Matrix::Ones(3, 2);
  EXPECT_FALSE(EmpiricalJsd(empty, x).ok());
  EXPECT_FALSE(EmpiricalJsd(x, x, 1).ok());
  EXPECT_FALSE(EmpiricalJsd(x, nn::Matrix::Ones(3, 3)).ok());
}

TEST(MetricsTest, HandComputedConfusion) {
  ConfusionMatrix c(2, 2);
  c << 8, 2, 1, 9;
  ClassMetrics m = MetricsFromConfusion(c).value();
  EXPECT_NEAR(m.precision[0], 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(m.sensitivity[0], 0.8, 1e-15);
  EXPECT_NEAR(m.f1[0], 2.0 * (8.0 / 9.0) * 0.8 / (8.0 / 9.0 + 0.8), 1e-15);
  EXPECT_NEAR(m.f1[0], 0.842, 5e-4);
  EXPECT_NEAR(m.accuracy, 17.0 / 20.0, 1e-15);
}

TEST(MetricsTest, PerfectPredictions) {
  std::vector<int> y = {0, 1, 2, 2, 1, 0};
  ClassMetrics m = MetricsFromPredictions(y, y, 3).value();
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(m.precision[c], 1.0);
    EXPECT_EQ(m.sensitivity[c], 1.0);
    EXPECT_EQ(m.f1[c], 1.0);
  }
  EXPECT_EQ(m.confusion.trace(), 6);
}

TEST(MetricsTest, UndefinedFlags) {
  ConfusionMatrix c(2, 2);
  c << 3, 0, 2, 0;
  ClassMetrics m = MetricsFromConfusion(c).value();
  EXPECT_TRUE(m.precision_undefined[1]);
  EXPECT_EQ(m.precision[1], 0.0);
  EXPECT_FALSE(m.sensitivity_undefined[1]);
  EXPECT_TRUE(m.f1_undefined[1]);
}

TEST(MetricsTest, MicroAverageEqualsAccuracy) {
  RngStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng.UniformIndex(5));
    ConfusionMatrix c(k, k);
    for (int64_t i = 0; i < c.size(); ++i) {
      c(i) = static_cast<int64_t>(rng.UniformIndex(20));
    }
    c(0, 0) += 1;
    ClassMetrics m = MetricsFromConfusion(c).value();
    MicroAverage micro = MicroAveraged(c);
    EXPECT_NEAR(micro.precision, m.accuracy, 1e-15);
    EXPECT_NEAR(micro.sensitivity, m.accuracy, 1e-15);
    for (int r = 0; r < k; ++r) {
      if (!m.f1_undefined[r] && m.precision[r] + m.sensitivity[r] > 0) {
        EXPECT_NEAR(1.0 / m.f1[r],
                    0.5 * (1.0 / m.precision[r] + 1.0 / m.sensitivity[r]),
                    1e-12);
      }
    }
  }
}

TEST(MetricsTest, ConfusionConservesCount) {
  RngStream rng(8);
  std::vector<int> truth, pred;
  for (int i = 0; i < 500; ++i) {
    truth.push_back(static_cast<int>(rng.UniformIndex(3)));
    pred.push_back(static_cast<int>(rng.UniformIndex(3)));
  }
  ClassMetrics m = MetricsFromPredictions(truth, pred, 3).value();
  EXPECT_EQ(m.confusion.sum(), 500);
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(m.confusion.row(c).sum(),
              std::count(truth.begin(), truth.end(), c));
  }
}

TEST(ClassifierTest, ZeroEpochsReturnsInitialization) {
  RngStream data(9);
  std::vector<int64_t> counts = {10, 10};
  LabeledDataset d = MakeBlobs(counts, data).value();
  ClassifierConfig config;
  config.epochs = 0;
  RngStream a(1), b(1);
  auto trained = TrainClassifier(d, config, a).value();
  auto init = nn::NetworkParameters::Initialize(
                  nn::ClassifierTopology(2, 2, config.hidden_units,
                                         config.hidden_layers),
                  b)
                  .value();
  EXPECT_TRUE(trained == init);
}

TEST(ClassifierTest, SeparableBlobsReachHighTrainingAccuracy) {
  std::vector<int64_t> counts = {100, 100};
  for (uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(100 + seed);
    LabeledDataset d = MakeBlobs(counts, rng, 3.0, 0.5).value();
    ClassifierConfig config;
    config.epochs = 200;
    auto net = TrainClassifier(d, config, rng).value();
    EXPECT_GE(Evaluate(net, d).value().accuracy, 0.95) << "seed " << seed;
  }
}

TEST(ClassifierTest, Deterministic) {
  RngStream data(10);
  std::vector<int64_t> counts = {20, 20, 20};
  LabeledDataset d = MakeBlobs(counts, data).value();
  ClassifierConfig config;
  config.epochs = 5;
  RngStream a(3), b(3);
  EXPECT_TRUE(TrainClassifier(d, config, a).value() ==
              TrainClassifier(d, config, b).value());
}

TEST(ClassifierTest, Errors) {
  ClassifierConfig config;
  RngStream rng(11);
  LabeledDataset empty{nn::Matrix(0, 2), {}, 2};
  EXPECT_FALSE(TrainClassifier(empty, config, rng).ok());
  LabeledDataset one{nn::Matrix::Zero(2, 2), {0, 0}, 1};
  EXPECT_FALSE(TrainClassifier(one, config, rng).ok());
}

TEST(MixingTest, SyntheticCounts) {
  std::vector<int64_t> real = {15, 50, 50};
  EXPECT_EQ(SyntheticCounts({1.0, true}, real),
            (std::vector<int64_t>{39, 38, 38}));
  EXPECT_EQ(SyntheticCounts({2.0, false}, real),
            (std::vector<int64_t>{30, 100, 100}));
  EXPECT_EQ(SyntheticCounts({0.0, true}, real),
            (std::vector<int64_t>{0, 0, 0}));
}

struct MixingFixture {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<nn::NetworkParameters> generators;
};

MixingFixture SmallMixing() {
  RngStream rng(12);
  std::vector<int64_t> train_counts = {6, 20, 20}, test_counts = {10, 10, 10};
  MixingFixture f;
  f.train = MakeBlobs(train_counts, rng).value();
  f.test = MakeBlobs(test_counts, rng).value();
  auto arch = nn::ToyGanArchitecture(2, 2, 4);
  for (int c = 0; c < 3; ++c) {
    f.generators.push_back(
        nn::NetworkParameters::Initialize(arch.generator, rng).value());
  }
  return f;
}

TEST(MixingTest, RatioZeroMatchesRealOnlyTraining) {
  MixingFixture f = SmallMixing();
  MixingSweepConfig config;
  config.cells = {{0.0, true}, {1.0, true}};
  config.classifier.epochs = 20;
  config.classifier.learning_rate = kToyClassifierLearningRate;
  auto rows = MixingSweep(f.train, f.test, f.generators, config, 77).value();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].synthetic_size, 0);
  EXPECT_EQ(rows[1].synthetic_size, 46);

  RngStream trainer = RngStream(77).Fork(0);
  auto net = TrainClassifier(f.train, config.classifier, trainer).value();
  EXPECT_EQ(Evaluate(net, f.test).value().confusion, rows[0].metrics.confusion);
}

TEST(MixingTest, DeterministicTableAndCsv) {
  MixingFixture f = SmallMixing();
  MixingSweepConfig config;
  config.cells = {{0.0, true}, {0.5, false}, {2.0, true}};
  config.classifier.epochs = 10;
  config.real_train_size = 30;
  auto a = MixingSweep(f.train, f.test, f.generators, config, 5).value();
  auto b = MixingSweep(f.train, f.test, f.generators, config, 5).value();
  EXPECT_EQ(MixingCsv(a), MixingCsv(b));
  EXPECT_EQ(a[0].real_size, 30);
  const std::string csv = MixingCsv(a);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("ratio,per_class,real_size,synthetic_size,train_size,"
                      "accuracy,precision_0",
                      0),
            0u);
}

TEST(MixingTest, Errors) {
  MixingFixture f = SmallMixing();
  MixingSweepConfig config;
  EXPECT_FALSE(MixingSweep(f.train, f.test, f.generators, config, 1).ok());
  config.cells = {{-1.0, true}};
  EXPECT_FALSE(MixingSweep(f.train, f.test, f.generators, config, 1).ok());
}

TEST(MixingTest, ConfusionCsv) {
  ConfusionMatrix c(2, 2);
  c << 8, 2, 1, 9;
  EXPECT_EQ(ConfusionCsv(c), "true_class,pred_0,pred_1\n0,8,2\n1,1,9\n");
}

}  // namespace
}  // namespace fedgan::eval
