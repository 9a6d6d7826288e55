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

// Experiment configuration and its text format.
//
// The format is a TOML subset: "[section]" headers, "key = value" lines and
// "#" comments. Values are integers, reals, booleans, double-quoted strings
// or flat arrays of numbers. Every key is optional; unknown keys are errors.
//
//   [experiment]  iterations seed batch_size batches_per_iteration
//                 initial_learning_rate
//   [grid]        rows cols neighborhood_size
//   [coev]        tournament_size mutation_probability lr_mutation_scale
//                 mixture_mutation_probability replacement_size
//                 skip_discriminator_steps
//   [mixture]     mutation_scale metric sample_size coverage_min_fraction
//   [network]     latent_dim generator_hidden generator_output_scale
//                 discriminator_hidden optimizer
//   [dataset]     kind modes radius std side spacing center
//   [distribution] poll_interval_ms fetch_timeout_ms failure_policy
//                 max_missed_polls

#ifndef COEVGAN_CONFIG_H_
#define COEVGAN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "coevgan/coevolution.h"
#include "coevgan/datasets.h"
#include "coevgan/grid.h"
#include "coevgan/mixture.h"
#include "coevgan/nn.h"

namespace coevgan {

struct DatasetConfig {
  DistributionKind kind = DistributionKind::kGaussianRing;
  int modes = 8;
  double radius = 2.0;
  double std = 0.02;
  int side = 3;
  double spacing = 2.0;
  double center_x = 0.0;
  double center_y = 0.0;

  SyntheticDistribution Build(std::uint64_t seed) const;
  bool operator==(const DatasetConfig&) const = default;
};

enum class FailurePolicy { kIgnore, kAbort };

std::string FailurePolicyName(FailurePolicy policy);

struct ExperimentConfig {
  int iterations = 200;
  std::uint64_t seed = 1;
  int batch_size = 100;
  int batches_per_iteration = 20;
  double initial_learning_rate = 0.0002;

  GridSpec grid;
  int neighborhood_size = 5;

  CoevParams coev;

  MixtureMetric metric = MixtureMetric::kFrechetProxy;
  int mixture_sample_size = 1000;
  double coverage_min_fraction = 0.05;

  NetworkShapes shapes;
  OptimizerKind optimizer = OptimizerKind::kAdam;

  DatasetConfig dataset;

  int poll_interval_ms = 2000;
  int fetch_timeout_ms = 5000;
  FailurePolicy failure_policy = FailurePolicy::kIgnore;
  int max_missed_polls = 3;

  // Throws ConfigError naming the offending key.
  void Validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig ParseConfig(std::string_view text);
std::string SerializeConfig(const ExperimentConfig& config);
ExperimentConfig LoadConfigFile(const std::filesystem::path& path);

}  // namespace coevgan

#endif  // COEVGAN_CONFIG_H_
