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

// Values exchanged between cells, clients and the master.

#ifndef COEVGAN_RECORDS_H_
#define COEVGAN_RECORDS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coevgan/config.h"
#include "coevgan/grid.h"
#include "coevgan/mixture.h"
#include "coevgan/nn.h"

namespace coevgan {

// Published state of one cell after a completed iteration.
struct CellSnapshot {
  CellId cell;
  int iteration = 0;
  Individual generator;
  Individual discriminator;
  MixtureWeights weights_g;
  MixtureWeights weights_d;
  std::optional<double> mixture_score;

  bool operator==(const CellSnapshot&) const = default;
};

enum class ClientState { kIdle, kBusy };

struct ClientStatus {
  ClientState state = ClientState::kIdle;
  std::optional<std::string> experiment_id;
  // Unix milliseconds of the last status change or training progress.
  std::int64_t last_heartbeat_ms = 0;
  int iteration = 0;
  std::optional<std::string> last_experiment_id;
  // "completed", "failed" or "aborted" for last_experiment_id.
  std::optional<std::string> last_outcome;
};

struct ExperimentRequest {
  std::string experiment_id;
  ExperimentConfig config;
  CellId assigned_cell;
  std::map<CellId, std::string> neighbor_addresses;
};

// One row of a cell's per-iteration log.
struct IterationRecord {
  int iteration = 0;
  CellId cell;
  double frechet_proxy = 0.0;
  double tvd = 0.0;
  int mode_coverage = 0;
  double generator_fitness = 0.0;
  double discriminator_fitness = 0.0;
  double learning_rate_g = 0.0;
  double learning_rate_d = 0.0;
  // Score held by the (1+1) mixture-weight evolution after this iteration.
  double mixture_score = 0.0;
  int fetches = 0;
  std::int64_t fetch_bytes = 0;
  int stale_neighbors = 0;
  int replacements = 0;
  double wall_seconds = 0.0;
  double cpu_seconds = 0.0;

  bool operator==(const IterationRecord&) const = default;
};

enum class CellOutcome { kCompleted, kFailed, kKilled };

std::string CellOutcomeName(CellOutcome outcome);

struct CellResult {
  std::string experiment_id;
  CellId cell;
  CellOutcome outcome = CellOutcome::kCompleted;
  std::string error;
  CellSnapshot final_snapshot;
  GeneratorMixture mixture;
  double final_score = 0.0;
  double final_tvd = 0.0;
  int final_mode_coverage = 0;
  Batch samples;
  std::vector<IterationRecord> history;
  int aborted_steps = 0;
};

struct RankedMixture {
  CellId cell;
  double score = 0.0;
};

struct RunReport {
  std::string experiment_id;
  // Ascending by score; the winner is ranking.front().
  std::vector<RankedMixture> ranking;
  std::map<CellId, double> final_scores;
  std::vector<CellId> failures;
  std::vector<std::string> csv_paths;
  std::string winner_samples_path;
  std::string grid_scores_path;
  bool aborted = false;

  std::optional<CellId> winner() const {
    if (ranking.empty()) return std::nullopt;
    return ranking.front().cell;
  }
};

// Ranks completed results ascending by final score; other outcomes are
// listed as failures together with `extra_failures`.
RunReport BuildReport(const std::string& experiment_id,
                      const std::vector<CellResult>& results,
                      const std::vector<CellId>& extra_failures = {});

}  // namespace coevgan

#endif  // COEVGAN_RECORDS_H_
