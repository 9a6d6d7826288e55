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

#ifndef COEVGAN_MASTER_H_
#define COEVGAN_MASTER_H_

#include <filesystem>
#include <string>
#include <vector>

#include "coevgan/config.h"
#include "coevgan/records.h"

namespace coevgan {

struct OrchestratorOptions {
  // Generated from the seed and clock when empty.
  std::string experiment_id;
  // Artifacts are written here when non-empty (see logs.h).
  std::filesystem::path output_dir;
};

struct OrchestratorRun {
  RunReport report;
  std::vector<CellResult> results;  // as reported by reachable clients
};

// Master control loop: assigns cell i (row-major) to clients[i], starts the
// experiment on every client, polls /status until all are done or declared
// failed, then gathers /results and ranks the mixtures.
//
// A client that misses config.max_missed_polls consecutive polls is failed.
// Under FailurePolicy::kIgnore it is left out of the ranking; under kAbort
// every other client is told to stop and the report is marked aborted.
// Throws ConfigError if there are fewer clients than cells and
// std::runtime_error if a client cannot be started.
OrchestratorRun Orchestrate(const ExperimentConfig& config,
                            const std::vector<std::string>& clients,
                            const OrchestratorOptions& options = {});

// Splits "host:port,host:port" into addresses.
std::vector<std::string> ParseClientList(const std::string& csv);

}  // namespace coevgan

#endif  // COEVGAN_MASTER_H_
