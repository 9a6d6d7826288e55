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

// One coevolutionary step of a single cell: tournament selection over the
// neighborhood, learning-rate mutation, opponent-sampled gradient training,
// mixture-weight mutation, all-pairs evaluation and center replacement.
//
// Fitness is "higher is better" for both roles. With L the discriminator's
// loss on a (generator, discriminator) pair, a generator's fitness is the
// mean of L over its pairings and a discriminator's fitness is minus that
// mean.

#ifndef COEVGAN_COEVOLUTION_H_
#define COEVGAN_COEVOLUTION_H_

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coevgan/datasets.h"
#include "coevgan/mixture.h"
#include "coevgan/nn.h"

namespace coevgan {

// Slot 0 is the center cell; the rest follow NeighborhoodSpec order.
struct Neighborhood {
  std::vector<Individual> generators;
  std::vector<Individual> discriminators;
  MixtureWeights weights_g;
  MixtureWeights weights_d;

  std::size_t size() const { return generators.size(); }
  void Validate() const;
};

struct CoevParams {
  int tournament_size = 2;
  // Probability of mutating each learning rate once per batch.
  double mutation_probability = 0.5;
  double lr_mutation_scale = 0.0001;
  // Probability of mutating each mixture weight vector once per step.
  double mixture_mutation_probability = 0.5;
  double mixture_mutation_scale = 0.01;
  // Carried for configuration compatibility; the step never reads it.
  int replacement_size = 1;
  // 0 trains the discriminators on every batch; N > 0 trains them on one
  // batch out of every N + 1.
  int skip_discriminator_steps = 0;

  void Validate() const;
  bool operator==(const CoevParams&) const = default;
};

// Loss matrix over generators (rows) and discriminators (columns) on one
// batch with shared latents.
Eigen::MatrixXd LossMatrix(const std::vector<Individual>& generators,
                           const std::vector<Individual>& discriminators,
                           const NetworkShapes& shapes, const Batch& batch,
                           const Batch& latents);

// Sets the fitness of every generator and discriminator from all pairings
// and returns the loss matrix.
Eigen::MatrixXd EvaluateAllPairs(std::vector<Individual>& generators,
                                 std::vector<Individual>& discriminators,
                                 const NetworkShapes& shapes,
                                 const Batch& batch, const Batch& latents);

// Each output slot holds the fittest of tau uniform draws with replacement.
// Ties go to the earlier draw. Throws std::invalid_argument if a fitness is
// unset or tau is outside [1, size].
std::vector<Individual> TournamentSelect(
    const std::vector<Individual>& individuals, int tau, std::mt19937_64& rng);

// With probability beta returns clamp(lr + N(0, scale^2), 1e-6, 1).
double MutateLearningRate(double lr, double beta, double scale,
                          std::mt19937_64& rng);

const Individual& GetRandomOpponent(const std::vector<Individual>& opponents,
                                    const MixtureWeights& weights,
                                    std::mt19937_64& rng);

struct ReplacementEvent {
  Role role = Role::kGenerator;
  double incumbent_fitness = 0.0;
  double candidate_fitness = 0.0;
  bool replaced = false;

  double retained_fitness() const {
    return replaced ? candidate_fitness : incumbent_fitness;
  }
};

struct StepResult {
  Neighborhood neighborhood;
  // One generator event and one discriminator event unless aborted or no
  // candidate was trained.
  std::vector<ReplacementEvent> replacements;
  bool aborted = false;
  std::string error;
};

// Runs one step over `batches`. The last batch doubles as the evaluation
// batch. Only slot 0 of the returned neighborhood can differ from the input
// (plus the mixture weights); a numeric failure returns the input unchanged
// with aborted set.
StepResult StepGanCoev(const Neighborhood& nbh, const CoevParams& params,
                       const NetworkShapes& shapes,
                       const std::vector<Minibatch>& batches,
                       std::mt19937_64& rng);

}  // namespace coevgan

#endif  // COEVGAN_COEVOLUTION_H_
