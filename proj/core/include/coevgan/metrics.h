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

#ifndef COEVGAN_METRICS_H_
#define COEVGAN_METRICS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "coevgan/datasets.h"
#include "coevgan/nn.h"

namespace coevgan {

struct GaussianSummary {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Sample mean and unbiased covariance. Needs at least dim + 1 rows.
GaussianSummary FitGaussian(const Batch& samples);

// Frechet distance between two Gaussians:
//   |mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}).
// The trace of the square root is taken through the symmetric matrix
// S_a^{1/2} S_b S_a^{1/2}, which has the same spectrum as S_a S_b.
// Throws std::invalid_argument on dimension mismatch or a covariance with an
// eigenvalue below -1e-9 (scaled by its largest magnitude).
double FrechetDistance(const GaussianSummary& a, const GaussianSummary& b);

// Frechet proxy of two sample sets: FrechetDistance of their fitted Gaussians.
double FrechetProxy(const Batch& samples, const Batch& reference);

struct ModeHistogram {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  static ModeHistogram Uniform(int modes, std::int64_t per_mode = 1);
};

ModeHistogram HistogramOf(const Batch& samples,
                          const SyntheticDistribution& dist);

// Total variation distance between the normalized histograms, in [0, 1].
double Tvd(const ModeHistogram& p, const ModeHistogram& q);

// TVD between the sample histogram and the uniform histogram over modes.
double TvdToUniform(const Batch& samples, const SyntheticDistribution& dist);

// Number of modes receiving at least min_fraction of the samples.
int ModeCoverage(const Batch& samples, const SyntheticDistribution& dist,
                 double min_fraction);

}  // namespace coevgan

#endif  // COEVGAN_METRICS_H_
