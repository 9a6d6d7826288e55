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

#ifndef COEVGAN_MIXTURE_H_
#define COEVGAN_MIXTURE_H_

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coevgan/nn.h"

namespace coevgan {

// Non-negative weights summing to one.
struct MixtureWeights {
  std::vector<double> values;

  static MixtureWeights Uniform(std::size_t n);
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  // Throws std::invalid_argument unless on the simplex within 1e-9.
  void Validate() const;

  bool operator==(const MixtureWeights&) const = default;
};

// Draws i with probability weights[i]. Throws std::invalid_argument when all
// weights are zero.
std::size_t SampleIndex(const std::vector<double>& weights,
                        std::mt19937_64& rng);

struct GeneratorMixture {
  std::vector<Individual> generators;
  MixtureWeights weights;
  // Lower is better.
  std::optional<double> score;
};

enum class MixtureMetric { kFrechetProxy };

std::string MixtureMetricName(MixtureMetric metric);
MixtureMetric ParseMixtureMetric(const std::string& name);

// Each sample picks generator i with probability w_i and runs it on a fresh
// standard normal latent.
Batch SampleMixture(const GeneratorMixture& mix, const NetworkShape& shape,
                    int n, std::mt19937_64& rng);

// w'_i = |w_i + N(0, scale^2)| renormalized to the simplex.
MixtureWeights MutateWeights(const MixtureWeights& w, double scale,
                             std::mt19937_64& rng);

using MixtureScoreFn = std::function<double(const GeneratorMixture&)>;

// One (1+1) trial: the child replaces the parent iff score(child) <=
// score(parent). The parent is scored first when it has no score. A
// throwing score function keeps the parent.
GeneratorMixture EvolveWeightsEs1p1(const GeneratorMixture& mix, double scale,
                                    const MixtureScoreFn& score_fn,
                                    std::mt19937_64& rng);

struct MixtureMeasurement {
  double score = 0.0;
  Batch samples;
};

// Draws n_fake (>= 100) mixture samples and scores them against real.
MixtureMeasurement MeasureMixture(const GeneratorMixture& mix,
                                  const NetworkShape& shape,
                                  const Batch& real, int n_fake,
                                  MixtureMetric metric, std::mt19937_64& rng);

// MeasureMixture with the score stored on a copy of `mix`.
GeneratorMixture CalculateMixtureMeasure(GeneratorMixture mix,
                                         const NetworkShape& shape,
                                         const Batch& real, int n_fake,
                                         MixtureMetric metric,
                                         std::mt19937_64& rng);

}  // namespace coevgan

#endif  // COEVGAN_MIXTURE_H_
