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

#ifndef COEVGAN_DATASETS_H_
#define COEVGAN_DATASETS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coevgan/nn.h"

namespace coevgan {

enum class DistributionKind { kGaussianRing, kGaussianGrid, kSingleGaussian };

std::string DistributionKindName(DistributionKind kind);
DistributionKind ParseDistributionKind(const std::string& name);

// Equal-weight isotropic Gaussian mixture in the plane.
struct SyntheticDistribution {
  DistributionKind kind = DistributionKind::kGaussianRing;
  std::vector<Eigen::Vector2d> mode_centers;
  double mode_std = 0.02;
  std::uint64_t seed = 0;

  int ModeCount() const { return static_cast<int>(mode_centers.size()); }

  // n i.i.d. samples; mode chosen uniformly, then Gaussian noise.
  Batch Sample(int n, std::mt19937_64& rng) const;

  // `modes` >= 2 centers at angles 2*pi*i/modes on a circle.
  static SyntheticDistribution GaussianRing(int modes, double radius,
                                            double std, std::uint64_t seed = 0);
  // side x side lattice centered on the origin with the given spacing.
  static SyntheticDistribution GaussianGrid(int side, double spacing,
                                            double std, std::uint64_t seed = 0);
  static SyntheticDistribution SingleGaussian(const Eigen::Vector2d& center,
                                              double std,
                                              std::uint64_t seed = 0);
};

using Minibatch = Batch;

// n_batches batches of batch_size samples, reproducible for a given seed.
std::vector<Minibatch> GetMinibatches(const SyntheticDistribution& dist,
                                      int batch_size, int n_batches,
                                      std::uint64_t seed);

// Same as above, drawing from a caller-owned stream.
std::vector<Minibatch> GetMinibatches(const SyntheticDistribution& dist,
                                      int batch_size, int n_batches,
                                      std::mt19937_64& rng);

// Index of the nearest mode center; ties resolve to the lowest index.
int AssignMode(const Eigen::Ref<const Eigen::RowVectorXd>& point,
               const SyntheticDistribution& dist);

}  // namespace coevgan

#endif  // COEVGAN_DATASETS_H_
