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

#include "fedgan/divergence/divergence.h"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "generators.h"

namespace fedgan::divergence {
namespace {

using ::fedgan::testing::RandomDistribution;

const double kLn2 = std::log(2.0);
const double kLn4 = std::log(4.0);

DiscreteDistribution Dist(std::vector<double> masses) {
  return DiscreteDistribution::Create(std::move(masses)).value();
}

DiscriminatorVector Disc(std::vector<double> values) {
  return DiscriminatorVector::Create(std::move(values)).value();
}

TEST(DiscreteDistributionTest, RejectsInvalidMasses) {
  EXPECT_FALSE(DiscreteDistribution::Create({}).ok());
  EXPECT_FALSE(DiscreteDistribution::Create({0.5, 0.6}).ok());
  EXPECT_FALSE(DiscreteDistribution::Create({1.5, -0.5}).ok());
  EXPECT_FALSE(
      DiscreteDistribution::Create({std::nan(""), 1.0}).ok());
  EXPECT_TRUE(DiscreteDistribution::Create({0.25, 0.75}).ok());
  EXPECT_TRUE(DiscreteDistribution::Create({0.5, 0.5 + 5e-13}).ok());
}

TEST(DiscriminatorVectorTest, RejectsOutOfRange) {
  EXPECT_FALSE(DiscriminatorVector::Create({0.5, 1.01}).ok());
  EXPECT_FALSE(DiscriminatorVector::Create({-0.1}).ok());
  EXPECT_TRUE(DiscriminatorVector::Create({0.0, 1.0}).ok());
}

TEST(SiteTripleTest, RequiresSharedSupport) {
  EXPECT_FALSE(SiteTriple::Create(Dist({1.0}), Dist({0.5, 0.5}),
                                  Disc({0.5, 0.5}))
                   .ok());
  EXPECT_FALSE(SiteTriple::Create(Dist({0.5, 0.5}), Dist({0.5, 0.5}),
                                  Disc({0.5}))
                   .ok());
}

TEST(KlDivergenceTest, Examples) {
  const auto same = KlDivergence(Dist({0.5, 0.5}), Dist({0.5, 0.5})).value();
  EXPECT_TRUE(same.defined);
  EXPECT_EQ(same.value, 0.0);

  const auto point = KlDivergence(Dist({1.0, 0.0}), Dist({0.5, 0.5})).value();
  EXPECT_TRUE(point.defined);
  EXPECT_NEAR(point.value, 0.693147180559945, 1e-15);

  const auto undefined =
      KlDivergence(Dist({0.5, 0.5}), Dist({1.0, 0.0})).value();
  EXPECT_FALSE(undefined.defined);
  EXPECT_EQ(undefined.value, std::numeric_limits<double>::infinity());
}

TEST(KlDivergenceTest, SupportMismatchIsAnError) {
  EXPECT_FALSE(KlDivergence(Dist({1.0}), Dist({0.5, 0.5})).ok());
}

TEST(KlDivergenceTest, NonNegativeOnRandomPairs) {
  RngStream rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t n = 1 + rng.UniformIndex(8);
    const auto kl =
        KlDivergence(RandomDistribution(rng, n, true), RandomDistribution(rng, n))
            .value();
    ASSERT_TRUE(kl.defined);
    EXPECT_GE(kl.value, 0.0);
  }
}

TEST(JensenShannonTest, Examples) {
  EXPECT_EQ(JensenShannon(Dist({0.3, 0.7}), Dist({0.3, 0.7})).value(), 0.0);
  EXPECT_NEAR(JensenShannon(Dist({1.0, 0.0}), Dist({0.0, 1.0})).value(), kLn2,
              1e-15);
  // Frozen from a 30-digit evaluation of the two-KL formula.
  EXPECT_NEAR(JensenShannon(Dist({0.5, 0.5}), Dist({1.0, 0.0})).value(),
              0.215761554338835695, 1e-15);
  EXPECT_FALSE(JensenShannon(Dist({1.0}), Dist({0.5, 0.5})).ok());
}

TEST(JensenShannonTest, SymmetricAndBoundedOnRandomPairs) {
  RngStream rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t n = 1 + rng.UniformIndex(8);
    const auto p = RandomDistribution(rng, n, true);
    const auto q = RandomDistribution(rng, n, true);
    const double pq = JensenShannon(p, q).value();
    const double qp = JensenShannon(q, p).value();
    ASSERT_EQ(pq, qp);
    ASSERT_GE(pq, 0.0);
    ASSERT_LE(pq, kLn2 + 1e-12);
  }
}

TEST(OptimalDiscriminatorTest, Examples) {
  const auto p = Dist({0.1, 0.2, 0.7});
  const auto matched = OptimalDiscriminator(p, p).value();
  for (double v : matched.values()) EXPECT_EQ(v, 0.5);
  const auto disjoint =
      OptimalDiscriminator(Dist({1.0, 0.0}), Dist({0.0, 1.0})).value();
  EXPECT_EQ(disjoint[0], 1.0);
  EXPECT_EQ(disjoint[1], 0.0);
  const auto skew =
      OptimalDiscriminator(Dist({0.75, 0.25}), Dist({0.25, 0.75})).value();
  EXPECT_DOUBLE_EQ(skew[0], 0.75);
  EXPECT_DOUBLE_EQ(skew[1], 0.25);
}

TEST(OptimalDiscriminatorTest, BothZeroGetsOneHalf) {
  const auto d =
      OptimalDiscriminator(Dist({1.0, 0.0, 0.0}), Dist({0.0, 1.0, 0.0}))
          .value();
  EXPECT_EQ(d[2], 0.5);
}

TEST(ValueFunctionTest, ConstantHalfGivesMinusLog4) {
  RngStream rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng.UniformIndex(6);
    const double v =
        ValueFunction(RandomDistribution(rng, n), RandomDistribution(rng, n),
                      DiscriminatorVector::Constant(n, 0.5))
            .value();
    EXPECT_NEAR(v, -kLn4, 1e-14);
  }
}

TEST(ValueFunctionTest, MatchedPairAtOptimumIsMinusLog4) {
  const auto p = Dist({0.2, 0.3, 0.5});
  const auto d = OptimalDiscriminator(p, p).value();
  EXPECT_NEAR(ValueFunction(p, p, d).value(), -kLn4, 1e-15);
}

TEST(ValueFunctionTest, ClampsDegenerateDiscriminator) {
  // D = 0 where real mass sits would be -inf without the clamp.
  const double v =
      ValueFunction(Dist({1.0, 0.0}), Dist({0.0, 1.0}), Disc({0.0, 1.0}))
          .value();
  EXPECT_TRUE(std::isfinite(v));
  // 1 - kDiscriminatorClip is not exact in binary, hence the loose bound.
  EXPECT_NEAR(v, 2.0 * std::log(kDiscriminatorClip), 1e-3);
}

TEST(ValueFunctionTest, TwoPointGridSearchConfirmsOptimum) {
  const auto real = Dist({0.75, 0.25});
  const auto gen = Dist({0.25, 0.75});
  const auto d_star = OptimalDiscriminator(real, gen).value();
  const double at_star = ValueFunction(real, gen, d_star).value();
  // Frozen: -ln 4 + 2 JSD([.75,.25] || [.25,.75]) at 30 digits.
  EXPECT_NEAR(at_star, -1.12467028923761670, 1e-12);

  double best = -std::numeric_limits<double>::infinity();
  double best_d0 = 0.0;
  double best_d1 = 0.0;
  constexpr int kGrid = 400;
  for (int i = 1; i < kGrid; ++i) {
    for (int j = 1; j < kGrid; ++j) {
      const double d0 = static_cast<double>(i) / kGrid;
      const double d1 = static_cast<double>(j) / kGrid;
      const double v = ValueFunction(real, gen, Disc({d0, d1})).value();
      if (v > best) {
        best = v;
        best_d0 = d0;
        best_d1 = d1;
      }
    }
  }
  EXPECT_LE(best, at_star + 1e-12);
  EXPECT_NEAR(best_d0, 0.75, 1.0 / kGrid);
  EXPECT_NEAR(best_d1, 0.25, 1.0 / kGrid);
}

TEST(ValueFunctionTest, OptimalDiscriminatorMaximizesOverRandomVectors) {
  RngStream rng(19);
  for (size_t n = 2; n <= 5; ++n) {
    for (int pair = 0; pair < 10; ++pair) {
      const auto real = RandomDistribution(rng, n);
      const auto gen = RandomDistribution(rng, n);
      const double at_star =
          ValueFunction(real, gen, OptimalDiscriminator(real, gen).value())
              .value();
      for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> d(n);
        for (double& x : d) x = rng.Uniform(0.0, 1.0);
        ASSERT_LE(ValueFunction(real, gen, Disc(d)).value(), at_star + 1e-9);
      }
    }
  }
}

TEST(StandaloneOptimumTest, Examples) {
  const auto p = Dist({0.1, 0.9});
  EXPECT_NEAR(StandaloneOptimum(p, p).value(), -kLn4, 1e-15);
  EXPECT_NEAR(StandaloneOptimum(Dist({1.0, 0.0}), Dist({0.0, 1.0})).value(),
              0.0, 1e-15);
  EXPECT_NEAR(StandaloneOptimum(Dist({0.5, 0.5}), Dist({1.0, 0.0})).value(),
              -0.954771252442219228, 1e-14);
}

TEST(StandaloneOptimumTest, MatchesValueAtOptimalDiscriminator) {
  RngStream rng(23);
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t n = 1 + rng.UniformIndex(8);
    const auto real = RandomDistribution(rng, n, true);
    const auto gen = RandomDistribution(rng, n, true);
    const double closed = StandaloneOptimum(real, gen).value();
    const double direct =
        ValueFunction(real, gen, OptimalDiscriminator(real, gen).value())
            .value();
    ASSERT_NEAR(closed, direct, 1e-10);
  }
}

TEST(StandaloneOptimumTest, GlobalMinimumAtMatchingGenerator) {
  // Exhaustive grid over the 3-point simplex with step 1/50; the target lies
  // on the grid.
  const auto real = Dist({0.2, 0.3, 0.5});
  constexpr int kSteps = 50;
  double best = std::numeric_limits<double>::infinity();
  int best_i = -1;
  int best_j = -1;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; i + j <= kSteps; ++j) {
      const double a = static_cast<double>(i) / kSteps;
      const double b = static_cast<double>(j) / kSteps;
      const double c = 1.0 - a - b;
      const auto gen = DiscreteDistribution::Create({a, b, std::max(c, 0.0)});
      if (!gen.ok()) continue;
      const double v = StandaloneOptimum(real, *gen).value();
      if (v < best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }
  EXPECT_EQ(best_i, 10);
  EXPECT_EQ(best_j, 15);
  EXPECT_NEAR(best, -kLn4, 1e-12);
}

TEST(StandaloneOptimumTest, GlobalMinimumFourPointSupport) {
  const auto real = Dist({0.1, 0.2, 0.3, 0.4});
  constexpr int kSteps = 20;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_cell;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; i + j <= kSteps; ++j) {
      for (int k = 0; i + j + k <= kSteps; ++k) {
        const int l = kSteps - i - j - k;
        const auto gen = DiscreteDistribution::Create(
            {i / 20.0, j / 20.0, k / 20.0, l / 20.0});
        if (!gen.ok()) continue;
        const double v = StandaloneOptimum(real, *gen).value();
        if (v < best) {
          best = v;
          best_cell = {i, j, k, l};
        }
      }
    }
  }
  EXPECT_EQ(best_cell, (std::vector<int>{2, 4, 6, 8}));
  EXPECT_NEAR(best, -kLn4, 1e-12);
}

TEST(FederatedValueTest, Examples) {
  EXPECT_FALSE(FederatedValue({}).ok());

  const auto site = SiteTriple::Create(Dist({0.3, 0.7}), Dist({0.6, 0.4}),
                                       Disc({0.2, 0.9}))
                        .value();
  std::vector<SiteTriple> one = {site};
  EXPECT_EQ(FederatedValue(one).value(),
            ValueFunction(site.real, site.gen, site.disc).value());

  std::vector<SiteTriple> halves;
  for (int n = 0; n < 4; ++n) {
    halves.push_back(SiteTriple::Create(Dist({0.1, 0.9}), Dist({0.8, 0.2}),
                                        DiscriminatorVector::Constant(2, 0.5))
                         .value());
  }
  EXPECT_NEAR(FederatedValue(halves).value(), -4.0 * kLn4, 1e-14);
}

TEST(FederatedValueTest, AdditiveOverOptimalSites) {
  const auto p1 = Dist({0.75, 0.25});
  const auto g1 = Dist({0.25, 0.75});
  const auto p2 = Dist({0.5, 0.5});
  const auto g2 = Dist({1.0, 0.0});
  std::vector<SiteTriple> sites = {
      SiteTriple::Create(p1, g1, OptimalDiscriminator(p1, g1).value()).value(),
      SiteTriple::Create(p2, g2, OptimalDiscriminator(p2, g2).value()).value()};
  const double expected =
      StandaloneOptimum(p1, g1).value() + StandaloneOptimum(p2, g2).value();
  EXPECT_NEAR(FederatedValue(sites).value(), expected, 1e-10);
}

TEST(FederatedOptimumTest, Examples) {
  EXPECT_FALSE(FederatedOptimum({}).ok());

  const auto p = Dist({0.2, 0.8});
  std::vector<DistributionPair> matched(3, {p, p});
  EXPECT_NEAR(FederatedOptimum(matched).value(), -4.15888308335967186, 1e-12);

  std::vector<DistributionPair> single = {{Dist({0.5, 0.5}), Dist({1.0, 0.0})}};
  EXPECT_EQ(FederatedOptimum(single).value(),
            StandaloneOptimum(single[0].first, single[0].second).value());

  std::vector<DistributionPair> mixed = {
      {p, p}, {Dist({1.0, 0.0}), Dist({0.0, 1.0})}};
  EXPECT_NEAR(FederatedOptimum(mixed).value(), -2.0 * kLn4 + 2.0 * kLn2,
              1e-12);
}

TEST(FederatedOptimumTest, EqualsSumOfStandaloneOptimaExactly) {
  RngStream rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t sites = 1 + rng.UniformIndex(10);
    const size_t n = 1 + rng.UniformIndex(6);
    std::vector<DistributionPair> pairs;
    double sum = 0.0;
    double jsd_sum = 0.0;
    for (size_t s = 0; s < sites; ++s) {
      pairs.emplace_back(RandomDistribution(rng, n), RandomDistribution(rng, n));
      sum += StandaloneOptimum(pairs.back().first, pairs.back().second).value();
      jsd_sum += JensenShannon(pairs.back().first, pairs.back().second).value();
    }
    const double fed = FederatedOptimum(pairs).value();
    ASSERT_EQ(fed, sum);
    ASSERT_NEAR(fed, -static_cast<double>(sites) * kLn4 + 2.0 * jsd_sum,
                1e-12);
  }
}

}  // namespace
}  // namespace fedgan::divergence
