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

#include <thread>

#include "coevgan/exchange.h"

namespace coevgan {

LocalRun RunLocalGrid(const ExperimentConfig& config,
                      const LocalRunOptions& options) {
  config.Validate();
  InMemoryBoard board(options.lockstep, options.measure_bytes);
  const std::vector<CellId> cells = config.grid.AllCells();
  LocalRun run;
  run.results.resize(cells.size());

  std::vector<std::unique_ptr<SnapshotExchange>> exchanges;
  for (const CellId& c : cells) exchanges.push_back(board.ExchangeFor(c));

  std::vector<std::thread> threads;
  threads.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    threads.emplace_back([&, i] {
      const CellId cell = cells[i];
      int next_t = 1;
      CellRunHooks hooks;
      if (options.before_iteration) {
        hooks.before_iteration = [&, cell](int t, CellState& s) {
          options.before_iteration(cell, t, s);
        };
      }
      if (options.kill_before) {
        hooks.should_stop = [&, cell] {
          return options.kill_before(cell, next_t);
        };
        hooks.on_iteration = [&](const IterationRecord& r) {
          next_t = r.iteration + 1;
        };
      }
      run.results[i] = RunCellLoop(config, cell, options.experiment_id,
                                   *exchanges[i], hooks);
    });
  }
  for (std::thread& t : threads) t.join();
  run.report = BuildReport(options.experiment_id, run.results);
  return run;
}

}  // namespace coevgan
