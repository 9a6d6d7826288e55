// Copyright 2026 The coevgan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coevgan/datasets.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace coevgan {

std::string DistributionKindName(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kGaussianRing:
      return "gaussian_ring";
    case DistributionKind::kGaussianGrid:
      return "gaussian_grid";
    case DistributionKind::kSingleGaussian:
      return "single_gaussian";
  }
  return "unknown";
}

DistributionKind ParseDistributionKind(const std::string& name) {
  if (name == "gaussian_ring") return DistributionKind::kGaussianRing;
  if (name == "gaussian_grid") return DistributionKind::kGaussianGrid;
  if (name == "single_gaussian") return DistributionKind::kSingleGaussian;
  throw std::invalid_argument("unknown distribution kind '" + name + "'");
}

Batch SyntheticDistribution::Sample(int n, std::mt19937_64& rng) const {
  if (mode_centers.empty()) {
    throw std::invalid_argument("distribution has no modes");
  }
  std::uniform_int_distribution<int> pick(0, ModeCount() - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  Batch out(n, 2);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d& c = mode_centers[pick(rng)];
    const double dx = noise(rng);
    const double dy = noise(rng);
    out(i, 0) = c.x() + mode_std * dx;
    out(i, 1) = c.y() + mode_std * dy;
  }
  return out;
}

SyntheticDistribution SyntheticDistribution::GaussianRing(
    int modes, double radius, double std, std::uint64_t seed) {
  if (modes < 2) throw std::invalid_argument("gaussian_ring needs >= 2 modes");
  if (!(radius > 0.0)) throw std::invalid_argument("ring radius must be > 0");
  if (!(std >= 0.0)) throw std::invalid_argument("mode std must be >= 0");
  SyntheticDistribution d;
  d.kind = DistributionKind::kGaussianRing;
  d.mode_std = std;
  d.seed = seed;
  for (int i = 0; i < modes; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / modes;
    d.mode_centers.emplace_back(radius * std::cos(angle),
                                radius * std::sin(angle));
  }
  return d;
}

SyntheticDistribution SyntheticDistribution::GaussianGrid(
    int side, double spacing, double std, std::uint64_t seed) {
  if (side < 1) throw std::invalid_argument("gaussian_grid side must be >= 1");
  if (!(std >= 0.0)) throw std::invalid_argument("mode std must be >= 0");
  SyntheticDistribution d;
  d.kind = DistributionKind::kGaussianGrid;
  d.mode_std = std;
  d.seed = seed;
  const double half = 0.5 * (side - 1) * spacing;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      d.mode_centers.emplace_back(c * spacing - half, r * spacing - half);
    }
  }
  return d;
}

SyntheticDistribution SyntheticDistribution::SingleGaussian(
    const Eigen::Vector2d& center, double std, std::uint64_t seed) {
  if (!(std >= 0.0)) throw std::invalid_argument("mode std must be >= 0");
  SyntheticDistribution d;
  d.kind = DistributionKind::kSingleGaussian;
  d.mode_centers = {center};
  d.mode_std = std;
  d.seed = seed;
  return d;
}

std::vector<Minibatch> GetMinibatches(const SyntheticDistribution& dist,
                                      int batch_size, int n_batches,
                                      std::mt19937_64& rng) {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (n_batches < 1) throw std::invalid_argument("n_batches must be >= 1");
  std::vector<Minibatch> batches;
  batches.reserve(n_batches);
  for (int b = 0; b < n_batches; ++b) {
    batches.push_back(dist.Sample(batch_size, rng));
  }
  return batches;
}

std::vector<Minibatch> GetMinibatches(const SyntheticDistribution& dist,
                                      int batch_size, int n_batches,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return GetMinibatches(dist, batch_size, n_batches, rng);
}

int AssignMode(const Eigen::Ref<const Eigen::RowVectorXd>& point,
               const SyntheticDistribution& dist) {
  if (dist.mode_centers.empty()) {
    throw std::invalid_argument("distribution has no modes");
  }
  if (point.size() != 2) throw std::invalid_argument("point must be 2-D");
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dist.ModeCount(); ++i) {
    const double dx = point(0) - dist.mode_centers[i].x();
    const double dy = point(1) - dist.mode_centers[i].y();
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace coevgan
