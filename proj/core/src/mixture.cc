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

#include "coevgan/mixture.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <glog/logging.h>

#include "coevgan/metrics.h"

namespace coevgan {

MixtureWeights MixtureWeights::Uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("mixture needs at least one slot");
  return MixtureWeights{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

void MixtureWeights::Validate() const {
  if (values.empty()) throw std::invalid_argument("empty mixture weights");
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("mixture weight negative or non-finite");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights do not sum to 1");
  }
}

std::size_t SampleIndex(const std::vector<double>& weights,
                        std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("all weights are zero");
  std::uniform_real_distribution<double> u(0.0, total);
  const double r = u(rng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (r < acc) return i;
  }
  return last_positive;
}

std::string MixtureMetricName(MixtureMetric) { return "frechet_proxy"; }

MixtureMetric ParseMixtureMetric(const std::string& name) {
  if (name == "frechet_proxy") return MixtureMetric::kFrechetProxy;
  throw std::invalid_argument("unknown mixture metric '" + name + "'");
}

Batch SampleMixture(const GeneratorMixture& mix, const NetworkShape& shape,
                    int n, std::mt19937_64& rng) {
  if (mix.generators.size() != mix.weights.size()) {
    throw std::invalid_argument("mixture weights do not match generators");
  }
  std::vector<std::size_t> choice(n);
  for (int i = 0; i < n; ++i) choice[i] = SampleIndex(mix.weights.values, rng);
  const Batch latents = SampleLatents(n, shape.input_dim, rng);

  Batch out(n, shape.output_dim);
  for (std::size_t g = 0; g < mix.generators.size(); ++g) {
    std::vector<int> rows;
    for (int i = 0; i < n; ++i) {
      if (choice[i] == g) rows.push_back(i);
    }
    if (rows.empty()) continue;
    Batch z(static_cast<Eigen::Index>(rows.size()), shape.input_dim);
    for (std::size_t r = 0; r < rows.size(); ++r) z.row(r) = latents.row(rows[r]);
    const Batch x = GeneratorForward(mix.generators[g].params, shape, z);
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(rows[r]) = x.row(r);
  }
  return out;
}

MixtureWeights MutateWeights(const MixtureWeights& w, double scale,
                             std::mt19937_64& rng) {
  w.Validate();
  if (!(scale >= 0.0)) throw std::invalid_argument("mutation scale < 0");
  if (scale == 0.0) return w;
  std::normal_distribution<double> noise(0.0, scale);
  for (;;) {
    std::vector<double> v(w.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = std::abs(w[i] + noise(rng));
      sum += v[i];
    }
    if (!(sum > 0.0)) continue;
    for (double& x : v) x /= sum;
    return MixtureWeights{std::move(v)};
  }
}

GeneratorMixture EvolveWeightsEs1p1(const GeneratorMixture& mix, double scale,
                                    const MixtureScoreFn& score_fn,
                                    std::mt19937_64& rng) {
  GeneratorMixture parent = mix;
  try {
    if (!parent.score) parent.score = score_fn(parent);
  } catch (const std::exception& e) {
    LOG(WARNING) << "mixture score failed for parent: " << e.what();
    return parent;
  }
  GeneratorMixture child = parent;
  child.weights = MutateWeights(parent.weights, scale, rng);
  try {
    child.score = score_fn(child);
  } catch (const std::exception& e) {
    LOG(WARNING) << "mixture score failed for child, keeping parent: "
                 << e.what();
    return parent;
  }
  if (!std::isfinite(*child.score)) return parent;
  return *child.score <= *parent.score ? child : parent;
}

MixtureMeasurement MeasureMixture(const GeneratorMixture& mix,
                                  const NetworkShape& shape,
                                  const Batch& real, int n_fake,
                                  MixtureMetric metric, std::mt19937_64& rng) {
  if (n_fake < 100) throw std::invalid_argument("n_fake must be >= 100");
  MixtureMeasurement m;
  m.samples = SampleMixture(mix, shape, n_fake, rng);
  switch (metric) {
    case MixtureMetric::kFrechetProxy:
      m.score = FrechetProxy(m.samples, real);
      break;
  }
  return m;
}

GeneratorMixture CalculateMixtureMeasure(GeneratorMixture mix,
                                         const NetworkShape& shape,
                                         const Batch& real, int n_fake,
                                         MixtureMetric metric,
                                         std::mt19937_64& rng) {
  mix.score = MeasureMixture(mix, shape, real, n_fake, metric, rng).score;
  return mix;
}

}  // namespace coevgan
