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

#include <random>

#include <gtest/gtest.h>

#include "coevgan/datasets.h"
#include "unit/test_util.h"

namespace coevgan {
namespace {

using testing::ConstantGenerator;
using testing::ConstantGeneratorShape;

TEST(MixtureWeightsTest, UniformAndValidate) {
  const MixtureWeights w = MixtureWeights::Uniform(5);
  EXPECT_NO_THROW(w.Validate());
  EXPECT_DOUBLE_EQ(w[3], 0.2);
  EXPECT_THROW((MixtureWeights{{0.5, 0.6}}.Validate()), std::invalid_argument);
  EXPECT_THROW((MixtureWeights{{1.5, -0.5}}.Validate()), std::invalid_argument);
}

TEST(SampleMixtureTest, SingleGeneratorMatchesItsOwnOutput) {
  GeneratorMixture mix{{ConstantGenerator(0.3, -0.2)},
                       MixtureWeights::Uniform(1), std::nullopt};
  std::mt19937_64 rng(1);
  const Batch s = SampleMixture(mix, ConstantGeneratorShape(), 50, rng);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    EXPECT_NEAR(s(i, 0), 0.3, 1e-15);
    EXPECT_NEAR(s(i, 1), -0.2, 1e-15);
  }
}

TEST(SampleMixtureTest, ZeroWeightNeverSampled) {
  GeneratorMixture mix{{ConstantGenerator(0.5, 0.5), ConstantGenerator(-0.5, 0)},
                       MixtureWeights{{1.0, 0.0}}, std::nullopt};
  std::mt19937_64 rng(2);
  const Batch s = SampleMixture(mix, ConstantGeneratorShape(), 2000, rng);
  EXPECT_GT(s.col(0).minCoeff(), 0.0);
}

TEST(SampleMixtureTest, EqualWeightsAverageTheConstants) {
  GeneratorMixture mix{{ConstantGenerator(0.6, 0.0), ConstantGenerator(-0.2, 0.4)},
                       MixtureWeights{{0.5, 0.5}}, std::nullopt};
  std::mt19937_64 rng(3);
  const Batch s = SampleMixture(mix, ConstantGeneratorShape(), 100000, rng);
  EXPECT_NEAR(s.col(0).mean(), 0.2, 0.005);
  EXPECT_NEAR(s.col(1).mean(), 0.2, 0.005);
}

TEST(SampleMixtureTest, SelectionFrequenciesFollowWeights) {
  const std::vector<double> w = {0.1, 0.6, 0.3};
  GeneratorMixture mix{{ConstantGenerator(-0.5, 0), ConstantGenerator(0, 0),
                        ConstantGenerator(0.5, 0)},
                       MixtureWeights{w}, std::nullopt};
  std::mt19937_64 rng(4);
  const Batch s = SampleMixture(mix, ConstantGeneratorShape(), 100000, rng);
  std::vector<double> freq(3, 0.0);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    freq[s(i, 0) < -0.25 ? 0 : s(i, 0) < 0.25 ? 1 : 2] += 1.0 / 100000;
  }
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(freq[k], w[k], 0.02);
}

TEST(SampleIndexTest, AllZeroWeightsThrow) {
  std::mt19937_64 rng(5);
  EXPECT_THROW(SampleIndex({0.0, 0.0}, rng), std::invalid_argument);
}

TEST(MutateWeightsTest, ZeroScaleAndSingletonAreFixedPoints) {
  std::mt19937_64 rng(6);
  const MixtureWeights w{{0.1, 0.2, 0.7}};
  EXPECT_EQ(MutateWeights(w, 0.0, rng), w);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(MutateWeights(MixtureWeights{{1.0}}, 0.5, rng).values,
              std::vector<double>{1.0});
  }
}

TEST(MutateWeightsTest, SmallScaleStaysCloseOnSimplex) {
  std::mt19937_64 rng(7);
  const MixtureWeights w = MixtureWeights::Uniform(5);
  int close = 0;
  for (int i = 0; i < 10000; ++i) {
    const MixtureWeights m = MutateWeights(w, 0.01, rng);
    ASSERT_NO_THROW(m.Validate());
    double l1 = 0.0;
    for (std::size_t k = 0; k < 5; ++k) l1 += std::abs(m[k] - w[k]);
    close += l1 < 0.1;
  }
  EXPECT_GE(close, 9900);
}

TEST(EvolveWeightsEs1p1Test, ConstantScoreAlwaysAcceptsChild) {
  std::mt19937_64 rng(8);
  GeneratorMixture mix{{ConstantGenerator(0, 0), ConstantGenerator(0, 0)},
                       MixtureWeights::Uniform(2), std::nullopt};
  const auto score = [](const GeneratorMixture&) { return 1.0; };
  const GeneratorMixture out = EvolveWeightsEs1p1(mix, 0.1, score, rng);
  EXPECT_NE(out.weights, mix.weights);
  EXPECT_EQ(out.score, 1.0);
}

TEST(EvolveWeightsEs1p1Test, ScoreSequenceIsMonotoneTowardTarget) {
  std::mt19937_64 rng(9);
  const std::vector<double> target = {0.7, 0.2, 0.1};
  const auto score = [&](const GeneratorMixture& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) d += std::pow(m.weights[i] - target[i], 2);
    return std::sqrt(d);
  };
  GeneratorMixture mix{std::vector<Individual>(3), MixtureWeights::Uniform(3),
                       std::nullopt};
  double prev = score(mix);
  for (int i = 0; i < 500; ++i) {
    mix = EvolveWeightsEs1p1(mix, 0.05, score, rng);
    ASSERT_TRUE(mix.score.has_value());
    EXPECT_LE(*mix.score, prev);
    prev = *mix.score;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(EvolveWeightsEs1p1Test, ZeroScaleReturnsParentWeights) {
  std::mt19937_64 rng(10);
  GeneratorMixture mix{std::vector<Individual>(2), MixtureWeights{{0.3, 0.7}},
                       2.0};
  const auto score = [](const GeneratorMixture&) { return 2.0; };
  EXPECT_EQ(EvolveWeightsEs1p1(mix, 0.0, score, rng).weights, mix.weights);
}

TEST(EvolveWeightsEs1p1Test, ScoreFailureKeepsParent) {
  std::mt19937_64 rng(11);
  GeneratorMixture mix{std::vector<Individual>(2), MixtureWeights{{0.3, 0.7}},
                       5.0};
  const auto score = [](const GeneratorMixture&) -> double {
    throw std::runtime_error("metric blew up");
  };
  const GeneratorMixture out = EvolveWeightsEs1p1(mix, 0.1, score, rng);
  EXPECT_EQ(out.weights, mix.weights);
  EXPECT_EQ(out.score, 5.0);
}

TEST(MeasureMixtureTest, ReplayingRealSamplesScoresNearZero) {
  const auto ring = SyntheticDistribution::GaussianRing(8, 0.8, 0.0);
  // Eight constant generators, one per mode, equal weights.
  GeneratorMixture mix;
  for (const auto& c : ring.mode_centers) {
    mix.generators.push_back(ConstantGenerator(c.x(), c.y()));
  }
  mix.weights = MixtureWeights::Uniform(8);
  std::mt19937_64 rng(12);
  const Batch real = ring.Sample(5000, rng);
  const GeneratorMixture scored = CalculateMixtureMeasure(
      mix, ConstantGeneratorShape(), real, 5000, MixtureMetric::kFrechetProxy,
      rng);
  EXPECT_LT(*scored.score, 0.01);

  GeneratorMixture collapsed = mix;
  collapsed.weights = MixtureWeights{{1, 0, 0, 0, 0, 0, 0, 0}};
  const GeneratorMixture bad = CalculateMixtureMeasure(
      collapsed, ConstantGeneratorShape(), real, 5000,
      MixtureMetric::kFrechetProxy, rng);
  EXPECT_GT(*bad.score, 50 * *scored.score);
  EXPECT_GT(*bad.score, 0.5);
}

TEST(MeasureMixtureTest, DeterministicGivenSeedAndRejectsSmallSamples) {
  GeneratorMixture mix{{ConstantGenerator(0.1, 0.1), ConstantGenerator(-0.4, 0.2)},
                       MixtureWeights{{0.4, 0.6}}, std::nullopt};
  const Batch real = Batch::Random(200, 2);
  std::mt19937_64 a(13), b(13);
  EXPECT_EQ(MeasureMixture(mix, ConstantGeneratorShape(), real, 200,
                           MixtureMetric::kFrechetProxy, a)
                .score,
            MeasureMixture(mix, ConstantGeneratorShape(), real, 200,
                           MixtureMetric::kFrechetProxy, b)
                .score);
  EXPECT_THROW(MeasureMixture(mix, ConstantGeneratorShape(), real, 99,
                              MixtureMetric::kFrechetProxy, a),
               std::invalid_argument);
}

}  // namespace
}  // namespace coevgan
