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

#ifndef COEVGAN_LOCAL_GRID_H_
#define COEVGAN_LOCAL_GRID_H_

#include <functional>
#include <string>
#include <vector>

#include "coevgan/cell_runner.h"
#include "coevgan/config.h"
#include "coevgan/records.h"

namespace coevgan {

struct LocalRunOptions {
  std::string experiment_id = "local";
  // Lockstep reads make the run independent of thread scheduling.
  bool lockstep = true;
  bool measure_bytes = false;
  std::function<void(const CellId&, int t, CellState&)> before_iteration;
  // Returning true stops that cell before iteration t.
  std::function<bool(const CellId&, int t)> kill_before;
};

struct LocalRun {
  std::vector<CellResult> results;  // row-major cell order
  RunReport report;
};

// Runs every cell of the grid on its own thread in this process, exchanging
// snapshots through an in-memory board.
LocalRun RunLocalGrid(const ExperimentConfig& config,
                      const LocalRunOptions& options = {});

}  // namespace coevgan

#endif  // COEVGAN_LOCAL_GRID_H_
