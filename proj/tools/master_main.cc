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

// Master: coevgan_master --config run.toml --clients h:p,h:p,... \
//                        --output-dir out [--seed N]

#include <iostream>

#include <glog/logging.h>
#include "CLI11.hpp"

#include "coevgan/config.h"
#include "coevgan/master.h"

int main(int argc, char** argv) {
  CLI::App app{"Coevolutionary GAN grid master"};
  std::string config_path;
  std::string clients;
  std::string output_dir = "coevgan_out";
  std::optional<std::uint64_t> seed;
  std::string experiment_id;
  app.add_option("--config", config_path, "TOML experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--clients", clients, "Comma-separated host:port list")
      ->required();
  app.add_option("--output-dir", output_dir, "Directory for run artifacts");
  app.add_option("--seed", seed, "Override the master seed");
  app.add_option("--experiment-id", experiment_id, "Experiment identifier");
  CLI11_PARSE(app, argc, argv);

  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  try {
    coevgan::ExperimentConfig config = coevgan::LoadConfigFile(config_path);
    if (seed) config.seed = *seed;
    config.Validate();
    coevgan::OrchestratorOptions options;
    options.experiment_id = experiment_id;
    options.output_dir = output_dir;
    const coevgan::OrchestratorRun run = coevgan::Orchestrate(
        config, coevgan::ParseClientList(clients), options);
    const coevgan::RunReport& r = run.report;
    std::cout << "experiment " << r.experiment_id << ": " << r.ranking.size()
              << " ranked, " << r.failures.size() << " failed"
              << (r.aborted ? " (aborted)" : "") << "\n";
    for (const auto& m : r.ranking) {
      std::cout << "  " << m.cell.ToString() << "  " << m.score << "\n";
    }
    if (r.winner()) std::cout << "winner " << r.winner()->ToString() << "\n";
    return r.aborted ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
