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

#include "coevgan/local_grid.h"

#include <gtest/gtest.h>

#include "coevgan/cell_runner.h"
#include "unit/test_util.h"

namespace coevgan {
namespace {

using testing::TinyConfig;

TEST(RunCellLoopTest, ZeroIterationsPublishesInitialization) {
  const ExperimentConfig c = TinyConfig(2, 2, 0);
  const LocalRun run = RunLocalGrid(c);
  ASSERT_EQ(run.results.size(), 4u);
  for (const CellResult& r : run.results) {
    EXPECT_EQ(r.outcome, CellOutcome::kCompleted);
    EXPECT_TRUE(r.history.empty());
    const CellState init = InitializeCell(c, r.cell);
    EXPECT_EQ(r.final_snapshot.iteration, 0);
    EXPECT_EQ(r.final_snapshot.generator, init.generator);
    EXPECT_EQ(r.final_snapshot.discriminator, init.discriminator);
    EXPECT_EQ(r.final_snapshot.weights_g, init.weights_g);
  }
}

TEST(RunCellLoopTest, FrozenDynamicsKeepParametersAndCountIterations) {
  ExperimentConfig c = TinyConfig(2, 2, 2);
  c.initial_learning_rate = 0.0;
  c.coev.mutation_probability = 0.0;
  c.coev.mixture_mutation_probability = 0.0;
  const LocalRun run = RunLocalGrid(c);
  for (const CellResult& r : run.results) {
    const CellState init = InitializeCell(c, r.cell);
    EXPECT_EQ(r.final_snapshot.iteration, 2);
    EXPECT_EQ(r.final_snapshot.generator.params, init.generator.params);
    EXPECT_EQ(r.final_snapshot.discriminator.params,
              init.discriminator.params);
    EXPECT_EQ(r.final_snapshot.weights_g, init.weights_g);
    EXPECT_EQ(r.final_snapshot.weights_d, init.weights_d);
  }
}

TEST(RunCellLoopTest, InitialWeightsAreUniformOverNeighborhood) {
  const ExperimentConfig c = TinyConfig(3, 3, 0);
  const CellState s = InitializeCell(c, {1, 1});
  EXPECT_EQ(s.weights_g, MixtureWeights::Uniform(5));
  const ExperimentConfig small = TinyConfig(2, 2, 0);
  EXPECT_EQ(InitializeCell(small, {0, 0}).weights_d, MixtureWeights::Uniform(3));
}

TEST(RunLocalGridTest, MessageCountsAndMonotoneIterations) {
  const ExperimentConfig c = TinyConfig(2, 2, 5);
  const LocalRun run = RunLocalGrid(c);
  int total = 0;
  for (const CellResult& r : run.results) {
    ASSERT_EQ(r.history.size(), 5u);
    for (std::size_t i = 0; i < r.history.size(); ++i) {
      EXPECT_EQ(r.history[i].iteration, static_cast<int>(i) + 1);
      EXPECT_EQ(r.history[i].fetches, 2);
      EXPECT_EQ(r.history[i].stale_neighbors, 0);
      total += r.history[i].fetches;
    }
  }
  EXPECT_EQ(total, 4 * 2 * 5);
}

TEST(RunLocalGridTest, SingleCellMakesNoFetches) {
  const LocalRun run = RunLocalGrid(TinyConfig(1, 1, 3));
  ASSERT_EQ(run.results.size(), 1u);
  for (const IterationRecord& r : run.results[0].history) {
    EXPECT_EQ(r.fetches, 0);
  }
  ASSERT_EQ(run.report.ranking.size(), 1u);
}

TEST(RunLocalGridTest, SameSeedSameScores) {
  const ExperimentConfig c = TinyConfig(2, 2, 4);
  const LocalRun a = RunLocalGrid(c);
  const LocalRun b = RunLocalGrid(c);
  EXPECT_EQ(a.report.final_scores, b.report.final_scores);
  ExperimentConfig other = c;
  other.seed = c.seed + 1;
  EXPECT_NE(RunLocalGrid(other).report.final_scores, a.report.final_scores);
}

TEST(RunLocalGridTest, MixtureScoresAreMonotone) {
  const LocalRun run = RunLocalGrid(TinyConfig(2, 2, 8));
  for (const CellResult& r : run.results) {
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      EXPECT_LE(r.history[i].mixture_score, r.history[i - 1].mixture_score);
    }
  }
}

TEST(RunLocalGridTest, KilledCellIsReportedAsFailureAndOthersFinish) {
  LocalRunOptions opts;
  opts.kill_before = [](const CellId& cell, int t) {
    return cell == CellId{0, 1} && t == 3;
  };
  const LocalRun run = RunLocalGrid(TinyConfig(2, 2, 5), opts);
  EXPECT_EQ(run.report.ranking.size(), 3u);
  EXPECT_EQ(run.report.failures, (std::vector<CellId>{{0, 1}}));
  for (const CellResult& r : run.results) {
    if (r.cell == CellId{0, 1}) {
      EXPECT_EQ(r.outcome, CellOutcome::kKilled);
      EXPECT_EQ(r.history.size(), 2u);
    } else {
      EXPECT_EQ(r.history.size(), 5u);
    }
  }
}

TEST(RunLocalGridTest, BeforeIterationHookSeesLocalState) {
  LocalRunOptions opts;
  int calls = 0;
  std::mutex mu;
  opts.before_iteration = [&](const CellId&, int, CellState& s) {
    std::lock_guard<std::mutex> lock(mu);
    EXPECT_FALSE(s.generator.params.empty());
    ++calls;
  };
  RunLocalGrid(TinyConfig(2, 2, 3), opts);
  EXPECT_EQ(calls, 12);
}

}  // namespace
}  // namespace coevgan
