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

// Single-process grid run with in-memory snapshot exchange:
//   coevgan_local --config run.toml --output-dir out [--seed N] [--async]

#include <iostream>

#include <glog/logging.h>
#include "CLI11.hpp"

#include "coevgan/config.h"
#include "coevgan/local_grid.h"
#include "coevgan/logs.h"

int main(int argc, char** argv) {
  CLI::App app{"Coevolutionary GAN grid, single process"};
  std::string config_path;
  std::string output_dir = "coevgan_out";
  std::optional<std::uint64_t> seed;
  bool async = false;
  app.add_option("--config", config_path, "TOML experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--output-dir", output_dir, "Directory for run artifacts");
  app.add_option("--seed", seed, "Override the master seed");
  app.add_flag("--async", async,
               "Read newest neighbor snapshots instead of lockstep");
  CLI11_PARSE(app, argc, argv);

  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  try {
    coevgan::ExperimentConfig config = coevgan::LoadConfigFile(config_path);
    if (seed) config.seed = *seed;
    coevgan::LocalRunOptions options;
    options.lockstep = !async;
    coevgan::LocalRun run = coevgan::RunLocalGrid(config, options);
    coevgan::EmitLogs(output_dir, config.grid, run.results, run.report);
    for (const auto& m : run.report.ranking) {
      std::cout << m.cell.ToString() << "  " << m.score << "\n";
    }
    if (run.report.winner()) {
      std::cout << "winner " << run.report.winner()->ToString() << "\n";
    }
    return run.report.failures.empty() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
