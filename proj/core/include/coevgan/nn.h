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

// Small multilayer perceptrons with hand-written backpropagation, the
// adversarial loss, and first-order optimizers whose state travels with the
// network.
//
// Parameter layout is layer-major; within a layer the weight matrix comes
// first (out x in, row-major) followed by the bias vector (out). The wire
// format depends on this ordering.

#ifndef COEVGAN_NN_H_
#define COEVGAN_NN_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coevgan/grid.h"

namespace coevgan {

using ParameterVector = std::vector<double>;

// One sample per row.
using Batch =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Lower clamp applied to every probability before taking a logarithm.
inline constexpr double kProbabilityEpsilon = 1e-7;

enum class Role { kGenerator, kDiscriminator };
enum class OutputActivation { kTanh, kSigmoid };
enum class OptimizerKind { kSgd, kAdam };

std::string RoleName(Role role);
Role ParseRole(const std::string& name);

// Hidden layers always use tanh; the final layer uses `output`.
struct NetworkShape {
  int input_dim = 1;
  std::vector<int> hidden;
  int output_dim = 1;
  OutputActivation output = OutputActivation::kTanh;
  // Constant factor applied after the final activation, so a tanh
  // generator can emit points in (-output_scale, output_scale).
  double output_scale = 1.0;

  std::size_t ParameterCount() const;
  // Layer widths from input to output.
  std::vector<int> LayerDims() const;
  // Throws ShapeError when any width is < 1 or the scale is not positive.
  void Validate() const;

  // Latent 8 -> [32, 32] -> 2, tanh output scaled by 2.5.
  static NetworkShape DefaultGenerator();
  // 2 -> [32, 32] -> 1, sigmoid output.
  static NetworkShape DefaultDiscriminator();

  bool operator==(const NetworkShape&) const = default;
};

struct NetworkShapes {
  NetworkShape generator = NetworkShape::DefaultGenerator();
  NetworkShape discriminator = NetworkShape::DefaultDiscriminator();

  const NetworkShape& For(Role role) const {
    return role == Role::kGenerator ? generator : discriminator;
  }
  bool operator==(const NetworkShapes&) const = default;
};

// Moment arrays are empty for SGD and parameter-sized for Adam.
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::kAdam;
  std::int64_t step_count = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static OptimizerState Adam(std::size_t parameter_count);
  static OptimizerState Sgd();
  void Validate(std::size_t parameter_count) const;

  bool operator==(const OptimizerState&) const = default;
};

// One network plus everything needed to keep training it elsewhere.
struct Individual {
  Role role = Role::kGenerator;
  ParameterVector params;
  // A rate of 0 freezes the network.
  double learning_rate = 0.0002;
  OptimizerState optimizer;
  std::optional<double> fitness;
  CellId source_cell;
  int iteration = 0;

  void Validate(const NetworkShape& shape) const;
  std::string Context() const;

  bool operator==(const Individual&) const = default;
};

// Uniform(-bound, bound) parameters.
ParameterVector InitializeParameters(const NetworkShape& shape,
                                     std::mt19937_64& rng,
                                     double bound = 0.05);

Individual MakeIndividual(Role role, const NetworkShape& shape,
                          OptimizerKind optimizer, double learning_rate,
                          const CellId& cell, std::mt19937_64& rng);

// Post-activation outputs of every layer; activations[0] is the input.
struct ForwardCache {
  std::vector<Batch> activations;
};

Batch Forward(const NetworkShape& shape, std::span<const double> params,
              const Batch& input, ForwardCache* cache = nullptr);

// Backpropagates dLoss/dOutput through a cached forward pass. Parameter
// gradients are accumulated into `grad_params` when it is non-empty; the
// input gradient is written to `grad_input` when non-null.
void Backward(const NetworkShape& shape, std::span<const double> params,
              const ForwardCache& cache, const Batch& grad_output,
              std::span<double> grad_params, Batch* grad_input);

// Throws ShapeError unless latent.cols() == shape.input_dim.
Batch GeneratorForward(std::span<const double> params,
                       const NetworkShape& shape, const Batch& latent);

// L = -mean(log D(x)) - mean(log(1 - D(G(z)))), probabilities clamped to
// [eps, 1 - eps]. The discriminator minimizes L; the generator minimizes
// mean(log(1 - D(G(z)))), i.e. maximizes L.
double GanLoss(std::span<const double> d_on_real,
               std::span<const double> d_on_fake);

// Draws a batch of standard normal latent vectors.
Batch SampleLatents(int count, int dim, std::mt19937_64& rng);

// Gradient of the objective `net` minimizes, with `opponent` held fixed.
// `real` is only read for discriminators. Throws NumericError on NaN.
ParameterVector ComputeGradients(const Individual& net,
                                 const Individual& opponent,
                                 const NetworkShapes& shapes,
                                 const Batch& real, const Batch& latents);

// The generator's objective value mean(log(1 - D(G(z)))) or the
// discriminator's L, matching ComputeGradients. Used by gradient checks.
double Objective(const Individual& net, const Individual& opponent,
                 const NetworkShapes& shapes, const Batch& real,
                 const Batch& latents);

// One optimizer step with the individual's learning rate. Throws
// NumericError if any parameter becomes non-finite.
Individual ApplyUpdate(Individual individual, const ParameterVector& gradient);

}  // namespace coevgan

#endif  // COEVGAN_NN_H_
