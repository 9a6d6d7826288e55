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

#include "coevgan/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coevgan {
namespace {

constexpr double kCovarianceTolerance = 1e-9;
constexpr double kProductTolerance = 1e-8;

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// Square root of a symmetric PSD matrix via its eigendecomposition.
Eigen::MatrixXd PsdSqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Symmetrize(m));
  Eigen::VectorXd values = eig.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kCovarianceTolerance * scale) {
      throw std::invalid_argument("covariance is not positive semi-definite");
    }
    values(i) = std::sqrt(std::max(0.0, values(i)));
  }
  return eig.eigenvectors() * values.asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

GaussianSummary FitGaussian(const Batch& samples) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index dim = samples.cols();
  if (n < dim + 1) {
    throw std::invalid_argument("FitGaussian needs at least dim + 1 samples");
  }
  GaussianSummary s;
  s.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - s.mean.transpose();
  s.covariance = Symmetrize(centered.transpose() * centered /
                            static_cast<double>(n - 1));
  return s;
}

double FrechetDistance(const GaussianSummary& a, const GaussianSummary& b) {
  if (a.mean.size() != b.mean.size() ||
      a.covariance.rows() != a.mean.size() ||
      b.covariance.rows() != b.mean.size() ||
      a.covariance.cols() != a.covariance.rows() ||
      b.covariance.cols() != b.covariance.rows()) {
    throw std::invalid_argument("Gaussian summaries differ in dimension");
  }
  const double mean_term = (a.mean - b.mean).squaredNorm();
  const Eigen::MatrixXd sqrt_a = PsdSqrt(a.covariance);
  PsdSqrt(b.covariance);  // validates b

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      Symmetrize(sqrt_a * b.covariance * sqrt_a), Eigen::EigenvaluesOnly);
  double trace_sqrt = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    double v = eig.eigenvalues()(i);
    if (v < 0.0 && v > -kProductTolerance) v = 0.0;
    if (v < 0.0) throw std::invalid_argument("covariance product not PSD");
    trace_sqrt += std::sqrt(v);
  }
  const double trace = a.covariance.trace() + b.covariance.trace() -
                       2.0 * trace_sqrt;
  return mean_term + std::max(0.0, trace);
}

double FrechetProxy(const Batch& samples, const Batch& reference) {
  return FrechetDistance(FitGaussian(samples), FitGaussian(reference));
}

ModeHistogram ModeHistogram::Uniform(int modes, std::int64_t per_mode) {
  ModeHistogram h;
  h.counts.assign(modes, per_mode);
  h.total = per_mode * modes;
  return h;
}

ModeHistogram HistogramOf(const Batch& samples,
                          const SyntheticDistribution& dist) {
  ModeHistogram h;
  h.counts.assign(dist.ModeCount(), 0);
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    ++h.counts[AssignMode(samples.row(i), dist)];
  }
  h.total = samples.rows();
  return h;
}

double Tvd(const ModeHistogram& p, const ModeHistogram& q) {
  if (p.counts.size() != q.counts.size()) {
    throw std::invalid_argument("histograms have different mode counts");
  }
  if (p.total <= 0 || q.total <= 0) {
    throw std::invalid_argument("histogram total must be > 0");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    sum += std::abs(static_cast<double>(p.counts[i]) / p.total -
                    static_cast<double>(q.counts[i]) / q.total);
  }
  return 0.5 * sum;
}

double TvdToUniform(const Batch& samples, const SyntheticDistribution& dist) {
  return Tvd(HistogramOf(samples, dist),
             ModeHistogram::Uniform(dist.ModeCount()));
}

int ModeCoverage(const Batch& samples, const SyntheticDistribution& dist,
                 double min_fraction) {
  if (!(min_fraction > 0.0 && min_fraction < 1.0)) {
    throw std::invalid_argument("min_fraction must be in (0, 1)");
  }
  if (samples.rows() == 0) return 0;
  const ModeHistogram h = HistogramOf(samples, dist);
  int covered = 0;
  for (std::int64_t c : h.counts) {
    if (static_cast<double>(c) >= min_fraction * h.total) ++covered;
  }
  return covered;
}

}  // namespace coevgan
