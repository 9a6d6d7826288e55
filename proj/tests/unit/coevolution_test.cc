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

#include "coevgan/coevolution.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "coevgan/datasets.h"
#include "coevgan/errors.h"

namespace coevgan {
namespace {

NetworkShapes SmallShapes() {
  NetworkShapes s;
  s.generator = {4, {8}, 2, OutputActivation::kTanh, 2.5};
  s.discriminator = {2, {8}, 1, OutputActivation::kSigmoid};
  return s;
}

Neighborhood MakeNeighborhood(int size, const NetworkShapes& shapes,
                              double lr, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Neighborhood n;
  for (int i = 0; i < size; ++i) {
    n.generators.push_back(MakeIndividual(Role::kGenerator, shapes.generator,
                                          OptimizerKind::kAdam, lr, {0, i},
                                          rng));
    n.discriminators.push_back(
        MakeIndividual(Role::kDiscriminator, shapes.discriminator,
                       OptimizerKind::kAdam, lr, {0, i}, rng));
  }
  n.weights_g = MixtureWeights::Uniform(size);
  n.weights_d = MixtureWeights::Uniform(size);
  return n;
}

std::vector<Minibatch> Batches(int n, std::uint64_t seed) {
  return GetMinibatches(SyntheticDistribution::GaussianRing(8, 2.0, 0.02), 32,
                        n, seed);
}

// A discriminator whose output is exactly 0.5: zero weights, zero bias.
Individual HalfDiscriminator(const NetworkShapes& shapes) {
  Individual d;
  d.role = Role::kDiscriminator;
  d.params.assign(shapes.discriminator.ParameterCount(), 0.0);
  d.optimizer = OptimizerState::Sgd();
  return d;
}

TEST(EvaluateAllPairsTest, SinglePairFitnessIsPlusMinusLoss) {
  const NetworkShapes shapes = SmallShapes();
  Neighborhood n = MakeNeighborhood(1, shapes, 1e-3, 1);
  std::mt19937_64 rng(2);
  const Batch z = SampleLatents(32, 4, rng);
  const Eigen::MatrixXd loss = EvaluateAllPairs(
      n.generators, n.discriminators, shapes, Batches(1, 3)[0], z);
  ASSERT_EQ(loss.rows(), 1);
  EXPECT_EQ(*n.generators[0].fitness, loss(0, 0));
  EXPECT_EQ(*n.discriminators[0].fitness, -loss(0, 0));
}

TEST(EvaluateAllPairsTest, ConstantHalfDiscriminatorGivesTwoLnTwo) {
  const NetworkShapes shapes = SmallShapes();
  Neighborhood n = MakeNeighborhood(3, shapes, 1e-3, 4);
  std::vector<Individual> discs = {HalfDiscriminator(shapes)};
  std::mt19937_64 rng(5);
  EvaluateAllPairs(n.generators, discs, shapes, Batches(1, 6)[0],
                   SampleLatents(32, 4, rng));
  for (const Individual& g : n.generators) {
    EXPECT_NEAR(*g.fitness, 2 * std::log(2.0), 1e-15);
  }
  EXPECT_NEAR(*discs[0].fitness, -2 * std::log(2.0), 1e-15);
}

TEST(EvaluateAllPairsTest, DuplicatingAGeneratorKeepsDiscriminatorFitness) {
  const NetworkShapes shapes = SmallShapes();
  Neighborhood n = MakeNeighborhood(2, shapes, 1e-3, 7);
  std::mt19937_64 rng(8);
  const Batch z = SampleLatents(32, 4, rng);
  const Batch x = Batches(1, 9)[0];
  std::vector<Individual> gens = {n.generators[0]};
  std::vector<Individual> discs = n.discriminators;
  EvaluateAllPairs(gens, discs, shapes, x, z);
  std::vector<Individual> gens2 = {n.generators[0], n.generators[0]};
  std::vector<Individual> discs2 = n.discriminators;
  EvaluateAllPairs(gens2, discs2, shapes, x, z);
  for (std::size_t j = 0; j < discs.size(); ++j) {
    EXPECT_NEAR(*discs[j].fitness, *discs2[j].fitness, 1e-15);
  }
}

std::vector<Individual> WithFitness(const std::vector<double>& f) {
  std::vector<Individual> pop(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    pop[i].fitness = f[i];
    pop[i].iteration = static_cast<int>(i);  // tags the source slot
  }
  return pop;
}

// Draws are with replacement inside a tournament, so tau = n finds the best
// only when the best is drawn at least once.
TEST(TournamentSelectTest, FullTournamentDrawsWithReplacement) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(TournamentSelect(WithFitness({3.0}), 1, rng).size(), 1u);
  int best_hits = 0;
  for (int t = 0; t < 1000; ++t) {
    for (const Individual& s :
         TournamentSelect(WithFitness({1.0, 5.0, 2.0}), 3, rng)) {
      best_hits += s.iteration == 1;
    }
  }
  // 1 - (2/3)^3 = 19/27.
  EXPECT_NEAR(best_hits / 3000.0, 19.0 / 27.0, 0.03);
}

TEST(TournamentSelectTest, TauOneIsUniformResampling) {
  std::mt19937_64 rng(2);
  std::vector<int> counts(4, 0);
  for (int t = 0; t < 25000; ++t) {
    for (const Individual& s :
         TournamentSelect(WithFitness({1, 2, 3, 4}), 1, rng)) {
      ++counts[s.iteration];
    }
  }
  for (int c : counts) EXPECT_NEAR(c / 100000.0, 0.25, 0.01);
}

TEST(TournamentSelectTest, PairTournamentPrefersBetterThreeQuarters) {
  std::mt19937_64 rng(3);
  int better = 0;
  const int trials = 100000;
  for (int t = 0; t < trials / 2; ++t) {
    for (const Individual& s : TournamentSelect(WithFitness({1, 3}), 2, rng)) {
      better += s.iteration == 1;
    }
  }
  EXPECT_NEAR(static_cast<double>(better) / trials, 0.75, 0.01);
}

TEST(TournamentSelectTest, UnsetFitnessAndBadTauThrow) {
  std::mt19937_64 rng(4);
  std::vector<Individual> pop(2);
  EXPECT_THROW(TournamentSelect(pop, 2, rng), std::invalid_argument);
  EXPECT_THROW(TournamentSelect(WithFitness({1, 2}), 3, rng),
               std::invalid_argument);
}

TEST(MutateLearningRateTest, DegenerateSettingsLeaveRateUnchanged) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(MutateLearningRate(0.0002, 0.0, 0.1, rng), 0.0002);
    EXPECT_EQ(MutateLearningRate(0.0002, 1.0, 0.0, rng), 0.0002);
  }
}

TEST(MutateLearningRateTest, GaussianSpreadAndFloor) {
  std::mt19937_64 rng(6);
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0, lowest = 1.0;
  for (int i = 0; i < n; ++i) {
    const double lr = MutateLearningRate(0.0002, 1.0, 0.0001, rng);
    sum += lr;
    sum2 += lr * lr;
    lowest = std::min(lowest, lr);
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  EXPECT_NEAR(sd, 0.0001, 0.2 * 0.0001);
  EXPECT_GE(lowest, 1e-6);
}

TEST(GetRandomOpponentTest, FollowsWeights) {
  std::mt19937_64 rng(7);
  const auto pop = WithFitness({0, 0, 0, 0, 0});
  const auto degenerate = MixtureWeights{{1, 0, 0, 0, 0}};
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(GetRandomOpponent(pop, degenerate, rng).iteration, 0);
  }
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 100000; ++i) {
    ++counts[GetRandomOpponent(pop, MixtureWeights::Uniform(5), rng).iteration];
  }
  // Chi-squared goodness of fit, 4 degrees of freedom: p > 0.001 <=> < 18.47.
  double chi2 = 0.0;
  for (int c : counts) {
    EXPECT_NEAR(c / 100000.0, 0.2, 0.02);
    chi2 += (c - 20000.0) * (c - 20000.0) / 20000.0;
  }
  EXPECT_LT(chi2, 18.47);
  const auto pair = WithFitness({0, 0});
  int first = 0;
  for (int i = 0; i < 100000; ++i) {
    first += GetRandomOpponent(pair, MixtureWeights{{0.75, 0.25}}, rng)
                 .iteration == 0;
  }
  EXPECT_NEAR(first / 100000.0, 0.75, 0.01);
}

TEST(StepGanCoevTest, FrozenStepIsIdentityOnParametersAndWeights) {
  const NetworkShapes shapes = SmallShapes();
  const Neighborhood n = MakeNeighborhood(3, shapes, 0.0, 11);
  CoevParams p;
  p.mutation_probability = 0.0;
  p.mixture_mutation_probability = 0.0;
  std::mt19937_64 rng(12);
  const StepResult r = StepGanCoev(n, p, shapes, Batches(3, 13), rng);
  ASSERT_FALSE(r.aborted);
  for (std::size_t i = 0; i < n.size(); ++i) {
    EXPECT_EQ(r.neighborhood.generators[i].params, n.generators[i].params);
    EXPECT_EQ(r.neighborhood.discriminators[i].params,
              n.discriminators[i].params);
  }
  EXPECT_EQ(r.neighborhood.weights_g, n.weights_g);
  EXPECT_EQ(r.neighborhood.weights_d, n.weights_d);
}

TEST(StepGanCoevTest, OnlyTheCenterChangesAndRetainedFitnessNeverDrops) {
  const NetworkShapes shapes = SmallShapes();
  Neighborhood n = MakeNeighborhood(5, shapes, 0.01, 21);
  CoevParams p;
  std::mt19937_64 rng(22);
  int events = 0;
  for (int step = 0; step < 30; ++step) {
    const StepResult r = StepGanCoev(n, p, shapes, Batches(2, 100 + step), rng);
    ASSERT_FALSE(r.aborted) << r.error;
    for (std::size_t i = 1; i < n.size(); ++i) {
      EXPECT_EQ(r.neighborhood.generators[i], n.generators[i]);
      EXPECT_EQ(r.neighborhood.discriminators[i], n.discriminators[i]);
    }
    for (const ReplacementEvent& ev : r.replacements) {
      EXPECT_GE(ev.retained_fitness(), ev.incumbent_fitness);
      EXPECT_EQ(ev.replaced, ev.candidate_fitness > ev.incumbent_fitness);
      ++events;
    }
    EXPECT_EQ(r.neighborhood.generators[0].source_cell, (CellId{0, 0}));
    n = r.neighborhood;
  }
  EXPECT_EQ(events, 60);
}

TEST(StepGanCoevTest, ReportedRetainedFitnessMatchesReevaluation) {
  const NetworkShapes shapes = SmallShapes();
  const Neighborhood n = MakeNeighborhood(3, shapes, 0.02, 31);
  CoevParams p;
  std::mt19937_64 rng(32);
  const auto batches = Batches(3, 33);
  const StepResult r = StepGanCoev(n, p, shapes, batches, rng);
  ASSERT_EQ(r.replacements.size(), 2u);
  for (const ReplacementEvent& ev : r.replacements) {
    const double center = *(ev.role == Role::kGenerator
                                 ? r.neighborhood.generators[0].fitness
                                 : r.neighborhood.discriminators[0].fitness);
    EXPECT_EQ(center, ev.retained_fitness());
  }
}

TEST(StepGanCoevTest, SingleCellTrainsLikePlainGan) {
  const NetworkShapes shapes = SmallShapes();
  const Neighborhood n = MakeNeighborhood(1, shapes, 0.01, 41);
  CoevParams p;
  p.mutation_probability = 0.0;
  std::mt19937_64 rng(42);
  const StepResult r = StepGanCoev(n, p, shapes, Batches(4, 43), rng);
  ASSERT_FALSE(r.aborted);
  // One candidate per role, trained on every batch.
  ASSERT_EQ(r.replacements.size(), 2u);
  EXPECT_EQ(r.neighborhood.weights_g.values, std::vector<double>{1.0});
}

TEST(StepGanCoevTest, SkipRuleLimitsDiscriminatorUpdates) {
  const NetworkShapes shapes = SmallShapes();
  const Neighborhood n = MakeNeighborhood(1, shapes, 0.01, 51);
  CoevParams p;
  p.mutation_probability = 0.0;
  p.skip_discriminator_steps = 1;
  std::mt19937_64 rng(52);
  // The replaced discriminator carries its optimizer step count.
  const StepResult r = StepGanCoev(n, p, shapes, Batches(4, 53), rng);
  const Individual& d = r.neighborhood.discriminators[0];
  if (d.params != n.discriminators[0].params) {
    EXPECT_EQ(d.optimizer.step_count, 2);
  }
  const Individual& g = r.neighborhood.generators[0];
  if (g.params != n.generators[0].params) {
    EXPECT_EQ(g.optimizer.step_count, 4);
  }
}

TEST(StepGanCoevTest, NumericFailureReturnsInputUnchanged) {
  const NetworkShapes shapes = SmallShapes();
  Neighborhood n = MakeNeighborhood(3, shapes, 0.01, 61);
  n.generators[2].params[0] = std::nan("");
  CoevParams p;
  std::mt19937_64 rng(62);
  const StepResult r = StepGanCoev(n, p, shapes, Batches(2, 63), rng);
  EXPECT_TRUE(r.aborted);
  EXPECT_FALSE(r.error.empty());
  EXPECT_EQ(r.neighborhood.generators[0], n.generators[0]);
  EXPECT_TRUE(r.replacements.empty());
}

TEST(CoevParamsTest, ValidateRanges) {
  CoevParams p;
  EXPECT_NO_THROW(p.Validate());
  p.tournament_size = 0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = CoevParams{};
  p.mutation_probability = 1.5;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace coevgan
