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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fedgan/util/status_macros.h"

namespace fedgan::divergence {
namespace {

absl::Status CheckSameSupport(size_t a, size_t b) {
  if (a != b) {
    return absl::InvalidArgumentError(
        absl::StrCat("support size mismatch: ", a, " vs ", b));
  }
  return absl::OkStatus();
}

// p * ln(p / q) with the 0 ln 0 = 0 convention. Caller guarantees q > 0 when
// p > 0.
double KlTerm(double p, double q) {
  if (p == 0.0) return 0.0;
  return p * std::log(p / q);
}

}  // namespace

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Create(
    std::vector<double> masses) {
  if (masses.empty()) {
    return absl::InvalidArgumentError("distribution support must be non-empty");
  }
  double total = 0.0;
  for (size_t i = 0; i < masses.size(); ++i) {
    const double m = masses[i];
    if (!std::isfinite(m) || m < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("mass ", i, " is negative or non-finite: ", m));
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("masses sum to ", total, ", expected 1"));
  }
  return DiscreteDistribution(std::move(masses));
}

DiscreteDistribution DiscreteDistribution::PointMass(size_t size,
                                                     size_t index) {
  std::vector<double> masses(size, 0.0);
  masses.at(index) = 1.0;
  return DiscreteDistribution(std::move(masses));
}

DiscreteDistribution DiscreteDistribution::Uniform(size_t size) {
  return DiscreteDistribution(
      std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

absl::StatusOr<DiscriminatorVector> DiscriminatorVector::Create(
    std::vector<double> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("discriminator entry ", i, " outside [0,1]: ",
                       values[i]));
    }
  }
  return DiscriminatorVector(std::move(values));
}

DiscriminatorVector DiscriminatorVector::Constant(size_t size, double value) {
  return DiscriminatorVector(
      std::vector<double>(size, std::clamp(value, 0.0, 1.0)));
}

absl::StatusOr<SiteTriple> SiteTriple::Create(DiscreteDistribution real,
                                              DiscreteDistribution gen,
                                              DiscriminatorVector disc) {
  RETURN_IF_ERROR(CheckSameSupport(real.size(), gen.size()));
  RETURN_IF_ERROR(CheckSameSupport(real.size(), disc.size()));
  return SiteTriple{std::move(real), std::move(gen), std::move(disc)};
}

absl::StatusOr<KlResult> KlDivergence(const DiscreteDistribution& p,
                                      const DiscreteDistribution& q) {
  RETURN_IF_ERROR(CheckSameSupport(p.size(), q.size()));
  double sum = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) {
      return KlResult{std::numeric_limits<double>::infinity(), false};
    }
    sum += KlTerm(p[i], q[i]);
  }
  // Rounding can push a true zero slightly negative.
  return KlResult{std::max(sum, 0.0), true};
}

absl::StatusOr<double> JensenShannon(const DiscreteDistribution& p,
                                     const DiscreteDistribution& q) {
  RETURN_IF_ERROR(CheckSameSupport(p.size(), q.size()));
  double kl_p = 0.0;
  double kl_q = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    // (p + q) is commutative in IEEE arithmetic, so swapping the arguments
    // swaps kl_p and kl_q exactly and the final sum is unchanged.
    const double m = 0.5 * (p[i] + q[i]);
    kl_p += KlTerm(p[i], m);
    kl_q += KlTerm(q[i], m);
  }
  const double jsd = 0.5 * (kl_p + kl_q);
  return std::clamp(jsd, 0.0, std::log(2.0));
}

absl::StatusOr<DiscriminatorVector> OptimalDiscriminator(
    const DiscreteDistribution& real, const DiscreteDistribution& gen) {
  RETURN_IF_ERROR(CheckSameSupport(real.size(), gen.size()));
  std::vector<double> values(real.size());
  for (size_t i = 0; i < real.size(); ++i) {
    const double denom = real[i] + gen[i];
    values[i] = denom > 0.0 ? real[i] / denom : 0.5;
  }
  return DiscriminatorVector::Create(std::move(values));
}

absl::StatusOr<double> ValueFunction(const DiscreteDistribution& real,
                                     const DiscreteDistribution& gen,
                                     const DiscriminatorVector& disc) {
  RETURN_IF_ERROR(CheckSameSupport(real.size(), gen.size()));
  RETURN_IF_ERROR(CheckSameSupport(real.size(), disc.size()));
  double value = 0.0;
  for (size_t i = 0; i < real.size(); ++i) {
    const double d =
        std::clamp(disc[i], kDiscriminatorClip, 1.0 - kDiscriminatorClip);
    if (real[i] > 0.0) value += real[i] * std::log(d);
    if (gen[i] > 0.0) value += gen[i] * std::log1p(-d);
  }
  return value;
}

absl::StatusOr<double> StandaloneOptimum(const DiscreteDistribution& real,
                                         const DiscreteDistribution& gen) {
  ASSIGN_OR_RETURN(const double jsd, JensenShannon(real, gen));
  return -std::log(4.0) + 2.0 * jsd;
}

absl::StatusOr<double> FederatedValue(std::span<const SiteTriple> sites) {
  if (sites.empty()) {
    return absl::InvalidArgumentError("federated value needs at least one site");
  }
  double total = 0.0;
  for (const SiteTriple& site : sites) {
    ASSIGN_OR_RETURN(const double v,
                     ValueFunction(site.real, site.gen, site.disc));
    total += v;
  }
  return total;
}

absl::StatusOr<double> FederatedOptimum(
    std::span<const DistributionPair> pairs) {
  if (pairs.empty()) {
    return absl::InvalidArgumentError(
        "federated optimum needs at least one site");
  }
  double total = 0.0;
  for (const auto& [real, gen] : pairs) {
    ASSIGN_OR_RETURN(const double v, StandaloneOptimum(real, gen));
    total += v;
  }
  return total;
}

}  // namespace fedgan::divergence
