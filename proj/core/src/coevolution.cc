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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <glog/logging.h>

#include "coevgan/errors.h"

namespace coevgan {
namespace {

std::span<const double> Column(const Batch& b) {
  return {b.data(), static_cast<std::size_t>(b.size())};
}

bool InUnitInterval(double p) { return p >= 0.0 && p <= 1.0; }

// Fittest index among `flags`-selected slots; ties keep the lowest index.
int BestTrained(const std::vector<Individual>& pop,
                const std::vector<bool>& trained) {
  int best = -1;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (!trained[i]) continue;
    if (best < 0 || *pop[i].fitness > *pop[best].fitness) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

void Neighborhood::Validate() const {
  if (generators.empty() || generators.size() != discriminators.size()) {
    throw std::invalid_argument("neighborhood populations differ in size");
  }
  if (weights_g.size() != generators.size() ||
      weights_d.size() != discriminators.size()) {
    throw std::invalid_argument("mixture weights do not match populations");
  }
  weights_g.Validate();
  weights_d.Validate();
}

void CoevParams::Validate() const {
  if (tournament_size < 1) {
    throw std::invalid_argument("tournament_size must be >= 1");
  }
  if (!InUnitInterval(mutation_probability) ||
      !InUnitInterval(mixture_mutation_probability)) {
    throw std::invalid_argument("mutation probabilities must be in [0, 1]");
  }
  if (!(lr_mutation_scale >= 0.0) || !(mixture_mutation_scale >= 0.0)) {
    throw std::invalid_argument("mutation scales must be >= 0");
  }
  if (skip_discriminator_steps < 0) {
    throw std::invalid_argument("skip_discriminator_steps must be >= 0");
  }
}

Eigen::MatrixXd LossMatrix(const std::vector<Individual>& generators,
                           const std::vector<Individual>& discriminators,
                           const NetworkShapes& shapes, const Batch& batch,
                           const Batch& latents) {
  std::vector<Batch> fakes;
  fakes.reserve(generators.size());
  for (const Individual& g : generators) {
    fakes.push_back(Forward(shapes.generator, g.params, latents));
  }
  Eigen::MatrixXd loss(generators.size(), discriminators.size());
  for (std::size_t j = 0; j < discriminators.size(); ++j) {
    const Individual& d = discriminators[j];
    const Batch d_real = Forward(shapes.discriminator, d.params, batch);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const Batch d_fake = Forward(shapes.discriminator, d.params, fakes[i]);
      try {
        loss(i, j) = GanLoss(Column(d_real), Column(d_fake));
      } catch (const NumericError& e) {
        throw NumericError("pair (" + generators[i].Context() + ", " +
                           d.Context() + "): " + e.what());
      }
    }
  }
  return loss;
}

Eigen::MatrixXd EvaluateAllPairs(std::vector<Individual>& generators,
                                 std::vector<Individual>& discriminators,
                                 const NetworkShapes& shapes,
                                 const Batch& batch, const Batch& latents) {
  if (generators.empty() || discriminators.empty()) {
    throw std::invalid_argument("EvaluateAllPairs needs both populations");
  }
  Eigen::MatrixXd loss =
      LossMatrix(generators, discriminators, shapes, batch, latents);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    generators[i].fitness = loss.row(i).mean();
  }
  for (std::size_t j = 0; j < discriminators.size(); ++j) {
    discriminators[j].fitness = -loss.col(j).mean();
  }
  return loss;
}

std::vector<Individual> TournamentSelect(
    const std::vector<Individual>& individuals, int tau,
    std::mt19937_64& rng) {
  const int n = static_cast<int>(individuals.size());
  if (n == 0) return {};
  if (tau < 1 || tau > n) {
    throw std::invalid_argument("tournament size outside [1, population]");
  }
  for (const Individual& ind : individuals) {
    if (!ind.fitness) {
      throw std::invalid_argument("tournament over unset fitness: " +
                                  ind.Context());
    }
  }
  std::uniform_int_distribution<int> draw(0, n - 1);
  std::vector<Individual> selected;
  selected.reserve(n);
  for (int slot = 0; slot < n; ++slot) {
    int winner = draw(rng);
    for (int k = 1; k < tau; ++k) {
      const int challenger = draw(rng);
      if (*individuals[challenger].fitness > *individuals[winner].fitness) {
        winner = challenger;
      }
    }
    selected.push_back(individuals[winner]);
  }
  return selected;
}

double MutateLearningRate(double lr, double beta, double scale,
                          std::mt19937_64& rng) {
  if (beta <= 0.0) return lr;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) >= beta) return lr;
  if (scale <= 0.0) return lr;
  std::normal_distribution<double> noise(0.0, scale);
  return std::clamp(lr + noise(rng), 1e-6, 1.0);
}

const Individual& GetRandomOpponent(const std::vector<Individual>& opponents,
                                    const MixtureWeights& weights,
                                    std::mt19937_64& rng) {
  if (opponents.size() != weights.size()) {
    throw std::invalid_argument("opponent weights do not match population");
  }
  return opponents[SampleIndex(weights.values, rng)];
}

StepResult StepGanCoev(const Neighborhood& nbh, const CoevParams& params,
                       const NetworkShapes& shapes,
                       const std::vector<Minibatch>& batches,
                       std::mt19937_64& rng) {
  nbh.Validate();
  params.Validate();
  if (batches.empty()) throw std::invalid_argument("step needs >= 1 batch");

  StepResult result;
  result.neighborhood = nbh;
  try {
    const int latent_dim = shapes.generator.input_dim;
    const auto latents_for = [&](const Batch& b) {
      return SampleLatents(static_cast<int>(b.rows()), latent_dim, rng);
    };

    // Selection needs current fitness on common ground.
    std::vector<Individual> gens = nbh.generators;
    std::vector<Individual> discs = nbh.discriminators;
    EvaluateAllPairs(gens, discs, shapes, batches.front(),
                     latents_for(batches.front()));
    const int tau =
        std::min<int>(params.tournament_size, static_cast<int>(gens.size()));
    std::vector<Individual> sel_g = TournamentSelect(gens, tau, rng);
    std::vector<Individual> sel_d = TournamentSelect(discs, tau, rng);
    std::vector<bool> trained_g(sel_g.size(), false);
    std::vector<bool> trained_d(sel_d.size(), false);

    for (std::size_t b = 0; b < batches.size(); ++b) {
      const Batch& batch = batches[b];
      for (Individual& g : sel_g) {
        g.learning_rate = MutateLearningRate(
            g.learning_rate, params.mutation_probability,
            params.lr_mutation_scale, rng);
      }
      for (Individual& d : sel_d) {
        d.learning_rate = MutateLearningRate(
            d.learning_rate, params.mutation_probability,
            params.lr_mutation_scale, rng);
      }

      for (std::size_t i = 0; i < sel_g.size(); ++i) {
        const Individual& d = GetRandomOpponent(sel_d, nbh.weights_d, rng);
        const Batch z = latents_for(batch);
        const ParameterVector grad =
            ComputeGradients(sel_g[i], d, shapes, batch, z);
        Individual updated = ApplyUpdate(sel_g[i], grad);
        if (updated.params != sel_g[i].params) trained_g[i] = true;
        sel_g[i] = std::move(updated);
      }

      const int skip = params.skip_discriminator_steps;
      if (skip > 0 && b % static_cast<std::size_t>(skip + 1) != 0) continue;
      for (std::size_t j = 0; j < sel_d.size(); ++j) {
        const Individual& g = GetRandomOpponent(sel_g, nbh.weights_g, rng);
        const Batch z = latents_for(batch);
        const ParameterVector grad =
            ComputeGradients(sel_d[j], g, shapes, batch, z);
        Individual updated = ApplyUpdate(sel_d[j], grad);
        if (updated.params != sel_d[j].params) trained_d[j] = true;
        sel_d[j] = std::move(updated);
      }
    }

    std::bernoulli_distribution mutate_mixture(
        params.mixture_mutation_probability);
    if (mutate_mixture(rng)) {
      result.neighborhood.weights_d =
          MutateWeights(nbh.weights_d, params.mixture_mutation_scale, rng);
    }
    if (mutate_mixture(rng)) {
      result.neighborhood.weights_g =
          MutateWeights(nbh.weights_g, params.mixture_mutation_scale, rng);
    }

    // Evaluate the trained populations plus both incumbents on the last
    // batch so that candidates and incumbents share opponents and latents.
    const Batch& eval_batch = batches.back();
    std::vector<Individual> eval_g = sel_g;
    eval_g.push_back(nbh.generators.front());
    std::vector<Individual> eval_d = sel_d;
    eval_d.push_back(nbh.discriminators.front());
    const Eigen::MatrixXd loss =
        LossMatrix(eval_g, eval_d, shapes, eval_batch, latents_for(eval_batch));
    const Eigen::Index ng = static_cast<Eigen::Index>(sel_g.size());
    const Eigen::Index nd = static_cast<Eigen::Index>(sel_d.size());
    for (Eigen::Index i = 0; i < ng; ++i) {
      sel_g[i].fitness = loss.row(i).head(nd).mean();
    }
    for (Eigen::Index j = 0; j < nd; ++j) {
      sel_d[j].fitness = -loss.col(j).head(ng).mean();
    }
    const double incumbent_g = loss.row(ng).head(nd).mean();
    const double incumbent_d = -loss.col(nd).head(ng).mean();

    Individual& center_g = result.neighborhood.generators.front();
    Individual& center_d = result.neighborhood.discriminators.front();
    const CellId home = center_g.source_cell;
    center_g.fitness = incumbent_g;
    center_d.fitness = incumbent_d;

    const auto replace = [&](Role role, std::vector<Individual>& pop,
                             const std::vector<bool>& trained,
                             Individual& center, double incumbent) {
      const int best = BestTrained(pop, trained);
      if (best < 0) return;
      ReplacementEvent ev;
      ev.role = role;
      ev.incumbent_fitness = incumbent;
      ev.candidate_fitness = *pop[best].fitness;
      ev.replaced = ev.candidate_fitness > incumbent;
      if (ev.replaced) {
        const int iteration = center.iteration;
        center = std::move(pop[best]);
        center.source_cell = home;
        center.iteration = iteration;
      }
      result.replacements.push_back(ev);
    };
    replace(Role::kDiscriminator, sel_d, trained_d, center_d, incumbent_d);
    replace(Role::kGenerator, sel_g, trained_g, center_g, incumbent_g);
  } catch (const NumericError& e) {
    LOG(WARNING) << "coevolution step aborted: " << e.what();
    result.neighborhood = nbh;
    result.replacements.clear();
    result.aborted = true;
    result.error = e.what();
  }
  return result;
}

}  // namespace coevgan
