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

// Exact-arithmetic oracles over finite discrete distributions: KL and
// Jensen-Shannon divergences, the optimal discriminator, and the GAN value
// function in its standalone and federated forms. All logarithms are natural.

#ifndef FEDGAN_DIVERGENCE_DIVERGENCE_H_
#define FEDGAN_DIVERGENCE_DIVERGENCE_H_

#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace fedgan::divergence {

// Absolute tolerance on the total mass of a DiscreteDistribution.
inline constexpr double kMassTolerance = 1e-12;
// Discriminator values are clamped to [kClip, 1 - kClip] before taking logs.
inline constexpr double kDiscriminatorClip = 1e-12;

// A probability vector over a finite support.
class DiscreteDistribution {
 public:
  // Fails unless every mass is finite and >= 0, the support is non-empty and
  // the masses sum to 1 within kMassTolerance.
  static absl::StatusOr<DiscreteDistribution> Create(std::vector<double> masses);

  // Point mass on `index` over a support of `size` points.
  static DiscreteDistribution PointMass(size_t size, size_t index);
  static DiscreteDistribution Uniform(size_t size);

  std::span<const double> masses() const { return masses_; }
  double operator[](size_t i) const { return masses_[i]; }
  size_t size() const { return masses_.size(); }

 private:
  explicit DiscreteDistribution(std::vector<double> masses)
      : masses_(std::move(masses)) {}

  std::vector<double> masses_;
};

// D(x_i) for every support point; entries lie in [0, 1].
class DiscriminatorVector {
 public:
  static absl::StatusOr<DiscriminatorVector> Create(std::vector<double> values);
  static DiscriminatorVector Constant(size_t size, double value);

  std::span<const double> values() const { return values_; }
  double operator[](size_t i) const { return values_[i]; }
  size_t size() const { return values_.size(); }

 private:
  explicit DiscriminatorVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

// One institution's (p_d, p_g, D) over a shared support.
struct SiteTriple {
  DiscreteDistribution real;
  DiscreteDistribution gen;
  DiscriminatorVector disc;

  static absl::StatusOr<SiteTriple> Create(DiscreteDistribution real,
                                           DiscreteDistribution gen,
                                           DiscriminatorVector disc);
};

// KL(p || q). `defined` is false when q_i = 0 < p_i somewhere, in which case
// `value` is +infinity.
struct KlResult {
  double value = 0.0;
  bool defined = true;
};

absl::StatusOr<KlResult> KlDivergence(const DiscreteDistribution& p,
                                      const DiscreteDistribution& q);

// [KL(p||m) + KL(q||m)] / 2 with m = (p + q) / 2. Bitwise symmetric in its
// arguments and bounded by ln 2.
absl::StatusOr<double> JensenShannon(const DiscreteDistribution& p,
                                     const DiscreteDistribution& q);

// D*_i = p_d_i / (p_d_i + p_g_i); points where both masses vanish get 0.5.
absl::StatusOr<DiscriminatorVector> OptimalDiscriminator(
    const DiscreteDistribution& real, const DiscreteDistribution& gen);

// sum_i [ p_d_i ln D_i + p_g_i ln(1 - D_i) ], with 0 * ln(.) taken as 0 and D
// clamped by kDiscriminatorClip.
absl::StatusOr<double> ValueFunction(const DiscreteDistribution& real,
                                     const DiscreteDistribution& gen,
                                     const DiscriminatorVector& disc);

// -ln 4 + 2 JSD(p_d || p_g).
absl::StatusOr<double> StandaloneOptimum(const DiscreteDistribution& real,
                                         const DiscreteDistribution& gen);

// Sum of per-site value functions.
absl::StatusOr<double> FederatedValue(std::span<const SiteTriple> sites);

using DistributionPair = std::pair<DiscreteDistribution, DiscreteDistribution>;

// Sum over sites of the standalone optimum, i.e.
// -N ln 4 + 2 sum_n JSD(p_d_n || p_g_n).
absl::StatusOr<double> FederatedOptimum(std::span<const DistributionPair> pairs);

}  // namespace fedgan::divergence

#endif  // FEDGAN_DIVERGENCE_DIVERGENCE_H_
