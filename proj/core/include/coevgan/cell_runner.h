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

#ifndef COEVGAN_CELL_RUNNER_H_
#define COEVGAN_CELL_RUNNER_H_

#include <functional>
#include <optional>
#include <string>

#include "coevgan/config.h"
#include "coevgan/exchange.h"
#include "coevgan/records.h"

namespace coevgan {

// Locally owned state of one cell between iterations.
struct CellState {
  Individual generator;
  Individual discriminator;
  MixtureWeights weights_g;
  MixtureWeights weights_d;
  std::optional<double> mixture_score;
};

struct CellRunHooks {
  // Polled before every iteration; returning true abandons the run with
  // outcome kKilled.
  std::function<bool()> should_stop;
  // Called before iteration `t` (1-based) may modify the local state.
  std::function<void(int t, CellState& state)> before_iteration;
  std::function<void(const IterationRecord&)> on_iteration;
};

// Uniform initialization of a cell: seeded parameters and 1/|N| weights.
CellState InitializeCell(const ExperimentConfig& config, const CellId& cell);

// Runs all configured iterations for one cell: fetch neighbor snapshots,
// coevolve, score the generator mixture with (1+1) acceptance, publish.
// Never throws for numeric trouble; failures come back as kFailed.
CellResult RunCellLoop(const ExperimentConfig& config, const CellId& cell,
                       const std::string& experiment_id,
                       SnapshotExchange& exchange,
                       const CellRunHooks& hooks = {});

}  // namespace coevgan

#endif  // COEVGAN_CELL_RUNNER_H_
