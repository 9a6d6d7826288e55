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

#include "coevgan/master.h"

#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <glog/logging.h>
#include "httplib.h"

#include "coevgan/errors.h"
#include "coevgan/logs.h"
#include "coevgan/wire.h"

namespace coevgan {
namespace {

enum class Phase { kRunning, kDone, kFailed };

struct Tracked {
  CellId cell;
  std::string address;
  std::unique_ptr<httplib::Client> http;
  Phase phase = Phase::kRunning;
  int missed = 0;
};

std::unique_ptr<httplib::Client> Connect(const std::string& address,
                                         int timeout_ms) {
  auto c = std::make_unique<httplib::Client>("http://" + address);
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  c->set_connection_timeout(timeout);
  c->set_read_timeout(timeout);
  c->set_write_timeout(timeout);
  return c;
}

std::string MakeExperimentId(std::uint64_t seed) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  return "exp-" + std::to_string(seed) + "-" + std::to_string(ms);
}

}  // namespace

std::vector<std::string> ParseClientList(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

OrchestratorRun Orchestrate(const ExperimentConfig& config,
                            const std::vector<std::string>& clients,
                            const OrchestratorOptions& options) {
  config.Validate();
  const std::vector<CellId> cells = config.grid.AllCells();
  if (clients.size() < cells.size()) {
    throw ConfigError("clients: " + std::to_string(clients.size()) +
                      " addresses for " + std::to_string(cells.size()) +
                      " cells");
  }
  const std::string id = options.experiment_id.empty()
                             ? MakeExperimentId(config.seed)
                             : options.experiment_id;

  std::map<CellId, std::string> address_of;
  std::vector<Tracked> tracked(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    tracked[i].cell = cells[i];
    tracked[i].address = clients[i];
    tracked[i].http = Connect(clients[i], config.fetch_timeout_ms);
    address_of[cells[i]] = clients[i];
  }

  // Start every cell.
  for (Tracked& t : tracked) {
    ExperimentRequest req;
    req.experiment_id = id;
    req.config = config;
    req.assigned_cell = t.cell;
    for (const CellId& m :
         NeighborhoodOf(config.grid, t.cell, config.neighborhood_size)
             .members) {
      req.neighbor_addresses[m] = address_of.at(m);
    }
    httplib::Result res =
        t.http->Post("/experiment", ToJson(req).dump(), "application/json");
    if (!res) {
      throw std::runtime_error("client " + t.address + " unreachable: " +
                               httplib::to_string(res.error()));
    }
    if (res->status != 202) {
      throw std::runtime_error("client " + t.address + " refused experiment (" +
                               std::to_string(res->status) + "): " + res->body);
    }
    LOG(INFO) << "cell " << t.cell.ToString() << " -> " << t.address;
  }

  // Poll until every cell is done or failed.
  bool aborted = false;
  const auto interval = std::chrono::milliseconds(config.poll_interval_ms);
  for (;;) {
    bool running = false;
    for (Tracked& t : tracked) {
      if (t.phase != Phase::kRunning) continue;
      httplib::Result res = t.http->Get("/status");
      ClientStatus st;
      bool ok = false;
      if (res && res->status == 200) {
        try {
          st = StatusFromJson(Json::parse(res->body));
          ok = true;
        } catch (const std::exception& e) {
          LOG(WARNING) << "bad status from " << t.address << ": " << e.what();
        }
      }
      if (!ok) {
        if (++t.missed >= config.max_missed_polls) {
          LOG(WARNING) << "client " << t.address << " (cell "
                       << t.cell.ToString() << ") failed after " << t.missed
                       << " missed polls";
          t.phase = Phase::kFailed;
          if (config.failure_policy == FailurePolicy::kAbort) aborted = true;
        } else {
          running = true;
        }
        continue;
      }
      t.missed = 0;
      if (st.state == ClientState::kIdle) {
        t.phase = st.last_experiment_id == id ? Phase::kDone : Phase::kFailed;
      } else if (st.experiment_id != id) {
        LOG(WARNING) << "client " << t.address << " runs a foreign experiment";
        t.phase = Phase::kFailed;
      } else {
        running = true;
      }
    }
    if (aborted || !running) break;
    std::this_thread::sleep_for(interval);
  }

  OrchestratorRun run;
  std::vector<CellId> failures;
  if (aborted) {
    for (Tracked& t : tracked) {
      if (t.phase == Phase::kRunning) t.http->Post("/abort");
      failures.push_back(t.cell);
    }
    run.report = BuildReport(id, {}, failures);
    run.report.aborted = true;
  } else {
    for (Tracked& t : tracked) {
      if (t.phase == Phase::kDone) {
        httplib::Result res = t.http->Get("/results");
        if (res && res->status == 200) {
          try {
            run.results.push_back(ResultFromJson(Json::parse(res->body)));
            continue;
          } catch (const std::exception& e) {
            LOG(WARNING) << "bad results from " << t.address << ": "
                         << e.what();
          }
        }
      }
      failures.push_back(t.cell);
    }
    run.report = BuildReport(id, run.results, failures);
  }
  if (!options.output_dir.empty()) {
    EmitLogs(options.output_dir, config.grid, run.results, run.report);
  }
  return run;
}

}  // namespace coevgan
