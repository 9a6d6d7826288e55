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

#include "coevgan/cell_runner.h"

#include <time.h>

#include <chrono>
#include <map>

#include <glog/logging.h>

#include "coevgan/coevolution.h"
#include "coevgan/metrics.h"
#include "coevgan/seeding.h"

namespace coevgan {
namespace {

double ThreadCpuSeconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * ts.tv_nsec;
}

SnapshotPtr MakeSnapshot(const CellId& cell, int iteration,
                         const CellState& state) {
  auto s = std::make_shared<CellSnapshot>();
  s->cell = cell;
  s->iteration = iteration;
  s->generator = state.generator;
  s->discriminator = state.discriminator;
  s->weights_g = state.weights_g;
  s->weights_d = state.weights_d;
  s->mixture_score = state.mixture_score;
  return s;
}

}  // namespace

CellState InitializeCell(const ExperimentConfig& config, const CellId& cell) {
  const NeighborhoodSpec spec =
      NeighborhoodOf(config.grid, cell, config.neighborhood_size);
  std::mt19937_64 rng = SeedHierarchy(config.seed, cell, Stream::kInit);
  CellState state;
  state.generator =
      MakeIndividual(Role::kGenerator, config.shapes.generator,
                     config.optimizer, config.initial_learning_rate, cell, rng);
  state.discriminator = MakeIndividual(
      Role::kDiscriminator, config.shapes.discriminator, config.optimizer,
      config.initial_learning_rate, cell, rng);
  state.weights_g = MixtureWeights::Uniform(spec.members.size());
  state.weights_d = MixtureWeights::Uniform(spec.members.size());
  return state;
}

CellResult RunCellLoop(const ExperimentConfig& config, const CellId& cell,
                       const std::string& experiment_id,
                       SnapshotExchange& exchange, const CellRunHooks& hooks) {
  CellResult result;
  result.experiment_id = experiment_id;
  result.cell = cell;

  const NeighborhoodSpec spec =
      NeighborhoodOf(config.grid, cell, config.neighborhood_size);
  const SyntheticDistribution dist = config.dataset.Build(config.seed);
  std::mt19937_64 data_rng = SeedHierarchy(config.seed, cell, Stream::kData);
  std::mt19937_64 step_rng = SeedHierarchy(config.seed, cell, Stream::kStep);
  std::mt19937_64 mixture_rng =
      SeedHierarchy(config.seed, cell, Stream::kMixture);
  std::mt19937_64 reference_rng =
      SeedHierarchy(config.seed, cell, Stream::kReference);
  const Batch reference = dist.Sample(config.mixture_sample_size, reference_rng);

  CellState state = InitializeCell(config, cell);
  std::map<CellId, SnapshotPtr> cache;
  SnapshotPtr published = MakeSnapshot(cell, 0, state);
  exchange.Publish(published);

  // Neighborhood assembled from the freshest snapshots seen so far.
  const auto assemble = [&](Neighborhood* nbh) {
    nbh->generators = {state.generator};
    nbh->discriminators = {state.discriminator};
    for (const CellId& n : spec.Neighbors()) {
      auto it = cache.find(n);
      if (it != cache.end()) {
        nbh->generators.push_back(it->second->generator);
        nbh->discriminators.push_back(it->second->discriminator);
      } else {
        nbh->generators.push_back(state.generator);
        nbh->discriminators.push_back(state.discriminator);
      }
    }
    nbh->weights_g = state.weights_g;
    nbh->weights_d = state.weights_d;
  };

  try {
    for (int t = 1; t <= config.iterations; ++t) {
      if (hooks.should_stop && hooks.should_stop()) {
        result.outcome = CellOutcome::kKilled;
        result.error = "stopped at iteration " + std::to_string(t);
        exchange.MarkFinished(cell);
        result.final_snapshot = *published;
        return result;
      }
      if (hooks.before_iteration) hooks.before_iteration(t, state);

      const auto wall_start = std::chrono::steady_clock::now();
      const double cpu_start = ThreadCpuSeconds();
      IterationRecord rec;
      rec.iteration = t;
      rec.cell = cell;

      for (const CellId& n : spec.Neighbors()) {
        FetchResult f = exchange.Fetch(n, t - 1);
        ++rec.fetches;
        rec.fetch_bytes += f.bytes;
        if (f.snapshot) {
          cache[n] = f.snapshot;
        } else {
          VLOG(1) << "cell " << cell.ToString() << ": neighbor "
                  << n.ToString() << " unreachable at iteration " << t;
        }
        auto it = cache.find(n);
        if (it == cache.end() || it->second->iteration < t - 1) {
          ++rec.stale_neighbors;
        }
      }

      Neighborhood nbh;
      assemble(&nbh);
      const std::vector<Minibatch> batches = GetMinibatches(
          dist, config.batch_size, config.batches_per_iteration, data_rng);
      StepResult step =
          StepGanCoev(nbh, config.coev, config.shapes, batches, step_rng);
      if (step.aborted) ++result.aborted_steps;
      for (const ReplacementEvent& ev : step.replacements) {
        if (ev.replaced) ++rec.replacements;
      }
      state.generator = step.neighborhood.generators.front();
      state.discriminator = step.neighborhood.discriminators.front();
      state.generator.iteration = t;
      state.discriminator.iteration = t;
      state.weights_d = step.neighborhood.weights_d;

      // (1+1) acceptance of the generator mixture weights.
      GeneratorMixture child{step.neighborhood.generators,
                             step.neighborhood.weights_g, std::nullopt};
      child.generators.front() = state.generator;
      MixtureMeasurement m =
          MeasureMixture(child, config.shapes.generator, reference,
                         config.mixture_sample_size, config.metric,
                         mixture_rng);
      if (!state.mixture_score || m.score <= *state.mixture_score) {
        state.weights_g = child.weights;
        state.mixture_score = m.score;
      } else {
        GeneratorMixture parent = child;
        parent.weights = state.weights_g;
        m = MeasureMixture(parent, config.shapes.generator, reference,
                           config.mixture_sample_size, config.metric,
                           mixture_rng);
      }

      rec.frechet_proxy = m.score;
      rec.tvd = TvdToUniform(m.samples, dist);
      rec.mode_coverage =
          ModeCoverage(m.samples, dist, config.coverage_min_fraction);
      rec.generator_fitness = state.generator.fitness.value_or(0.0);
      rec.discriminator_fitness = state.discriminator.fitness.value_or(0.0);
      rec.learning_rate_g = state.generator.learning_rate;
      rec.learning_rate_d = state.discriminator.learning_rate;
      rec.mixture_score = *state.mixture_score;

      published = MakeSnapshot(cell, t, state);
      exchange.Publish(published);

      rec.cpu_seconds = ThreadCpuSeconds() - cpu_start;
      rec.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - wall_start)
                             .count();
      result.history.push_back(rec);
      if (hooks.on_iteration) hooks.on_iteration(rec);
    }

    // Final mixture over the last neighborhood view.
    Neighborhood nbh;
    assemble(&nbh);
    result.mixture = GeneratorMixture{nbh.generators, state.weights_g,
                                      state.mixture_score};
    std::mt19937_64 final_rng = SeedHierarchy(config.seed, cell, Stream::kFinal);
    MixtureMeasurement m =
        MeasureMixture(result.mixture, config.shapes.generator, reference,
                       config.mixture_sample_size, config.metric, final_rng);
    result.final_score = m.score;
    result.final_tvd = TvdToUniform(m.samples, dist);
    result.final_mode_coverage =
        ModeCoverage(m.samples, dist, config.coverage_min_fraction);
    result.samples = std::move(m.samples);
    result.outcome = CellOutcome::kCompleted;
  } catch (const std::exception& e) {
    LOG(ERROR) << "cell " << cell.ToString() << " failed: " << e.what();
    result.outcome = CellOutcome::kFailed;
    result.error = e.what();
  }
  result.final_snapshot = *published;
  exchange.MarkFinished(cell);
  return result;
}

}  // namespace coevgan
