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

#include "coevgan/client.h"

#include <chrono>
#include <stdexcept>
#include <utility>

#include <glog/logging.h>
#include "httplib.h"

#include "coevgan/cell_runner.h"
#include "coevgan/errors.h"
#include "coevgan/wire.h"

namespace coevgan {
namespace {

constexpr char kJson[] = "application/json";

std::int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void SetJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void SetError(httplib::Response& res, int status, const std::string& msg) {
  SetJson(res, status, Json{{"error", msg}});
}

}  // namespace

struct HttpExchange::Connection {
  explicit Connection(const std::string& address)
      : client("http://" + address) {}
  httplib::Client client;
};

HttpExchange::HttpExchange(std::map<CellId, std::string> addresses,
                           int timeout_ms, PublishFn publish)
    : addresses_(std::move(addresses)),
      timeout_ms_(timeout_ms),
      publish_(std::move(publish)) {}

HttpExchange::~HttpExchange() = default;

void HttpExchange::Publish(SnapshotPtr snapshot) {
  publish_(std::move(snapshot));
}

FetchResult HttpExchange::Fetch(const CellId& neighbor, int iteration) {
  (void)iteration;
  FetchResult out;
  auto addr = addresses_.find(neighbor);
  if (addr == addresses_.end()) return out;
  auto& conn = connections_[neighbor];
  if (!conn) {
    conn = std::make_unique<Connection>(addr->second);
    const auto timeout = std::chrono::milliseconds(timeout_ms_);
    conn->client.set_connection_timeout(timeout);
    conn->client.set_read_timeout(timeout);
    conn->client.set_write_timeout(timeout);
    conn->client.set_keep_alive(true);
  }
  httplib::Result res = conn->client.Get("/snapshot");
  if (!res || res->status != 200) {
    // Drop the connection so the next attempt reconnects from scratch.
    conn.reset();
    return out;
  }
  out.bytes = static_cast<std::int64_t>(res->body.size());
  try {
    out.snapshot = std::make_shared<const CellSnapshot>(
        SnapshotFromJson(Json::parse(res->body)));
  } catch (const std::exception& e) {
    LOG(WARNING) << "bad snapshot from " << addr->second << ": " << e.what();
    out.snapshot = nullptr;
  }
  return out;
}

ClientRuntime::ClientRuntime(std::string host, int port, ClientOptions options)
    : host_(std::move(host)),
      port_(port),
      options_(options),
      server_(std::make_unique<httplib::Server>()) {
  status_.last_heartbeat_ms = NowMs();
  InstallRoutes();
}

ClientRuntime::~ClientRuntime() { Stop(); }

std::string ClientRuntime::address() const {
  return host_ + ":" + std::to_string(port_);
}

void ClientRuntime::Start() {
  if (port_ == 0) {
    port_ = server_->bind_to_any_port(host_);
    if (port_ < 0) throw std::runtime_error("cannot bind " + host_);
  } else if (!server_->bind_to_port(host_, port_)) {
    throw std::runtime_error("cannot bind " + address());
  }
  server_running_ = true;
  server_thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void ClientRuntime::Wait() {
  if (server_thread_.joinable()) server_thread_.join();
}

void ClientRuntime::Stop() {
  stop_requested_ = true;
  if (server_running_.exchange(false)) server_->stop();
  if (server_thread_.joinable()) server_thread_.join();
  std::thread training;
  {
    std::lock_guard<std::mutex> lock(mu_);
    training = std::move(training_thread_);
  }
  if (training.joinable()) training.join();
}

void ClientRuntime::Kill() {
  killed_ = true;
  stop_requested_ = true;
  if (server_running_.exchange(false)) server_->stop();
}

ClientStatus ClientRuntime::Status() const {
  std::lock_guard<std::mutex> lock(mu_);
  return status_;
}

void ClientRuntime::Touch() {
  std::lock_guard<std::mutex> lock(mu_);
  status_.last_heartbeat_ms = NowMs();
}

void ClientRuntime::PublishSnapshot(SnapshotPtr snapshot) {
  auto p = std::make_shared<Published>();
  p->full = ToJson(*snapshot).dump();
  p->generators = SnapshotSliceJson(*snapshot, Role::kGenerator).dump();
  p->discriminators =
      SnapshotSliceJson(*snapshot, Role::kDiscriminator).dump();
  std::lock_guard<std::mutex> lock(mu_);
  published_ = std::move(p);
  status_.iteration = snapshot->iteration;
  status_.last_heartbeat_ms = NowMs();
}

void ClientRuntime::InstallRoutes() {
  httplib::Server& s = *server_;

  s.Get("/status", [this](const httplib::Request&, httplib::Response& res) {
    SetJson(res, 200, ToJson(Status()));
  });

  s.Post("/experiment", [this](const httplib::Request& req,
                               httplib::Response& res) {
    ExperimentRequest request;
    try {
      request = RequestFromJson(Json::parse(req.body));
    } catch (const std::exception& e) {
      SetError(res, 400, e.what());
      return;
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (status_.state == ClientState::kBusy || killed_) {
      SetError(res, 409, "client busy");
      return;
    }
    // The previous training thread has already reported idle; reap it.
    if (training_thread_.joinable()) training_thread_.join();
    status_.state = ClientState::kBusy;
    status_.experiment_id = request.experiment_id;
    status_.iteration = 0;
    status_.last_heartbeat_ms = NowMs();
    published_.reset();
    results_.reset();
    stop_requested_ = false;
    const std::string id = request.experiment_id;
    training_thread_ =
        std::thread(&ClientRuntime::Train, this, std::move(request));
    SetJson(res, 202, Json{{"accepted", true}, {"experiment_id", id}});
  });

  const auto serve_published =
      [this](std::string Published::*field) {
        return [this, field](const httplib::Request&, httplib::Response& res) {
          std::shared_ptr<const Published> p;
          {
            std::lock_guard<std::mutex> lock(mu_);
            p = published_;
          }
          if (!p) {
            SetError(res, 404, "no snapshot published");
            return;
          }
          res.status = 200;
          res.set_content((*p).*field, kJson);
        };
      };
  s.Get("/snapshot", serve_published(&Published::full));
  s.Get("/parameters/generators", serve_published(&Published::generators));
  s.Get("/parameters/discriminators",
        serve_published(&Published::discriminators));

  s.Get("/results", [this](const httplib::Request&, httplib::Response& res) {
    std::shared_ptr<const std::string> r;
    {
      std::lock_guard<std::mutex> lock(mu_);
      r = results_;
    }
    if (!r) {
      SetError(res, 404, "no finished experiment");
      return;
    }
    res.status = 200;
    res.set_content(*r, kJson);
  });

  s.Post("/abort", [this](const httplib::Request&, httplib::Response& res) {
    stop_requested_ = true;
    SetJson(res, 200, Json{{"aborting", Status().state == ClientState::kBusy}});
  });

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      SetError(res, 404, "unknown route");
    }
  });
}

void ClientRuntime::Train(ExperimentRequest request) {
  const ExperimentConfig& config = request.config;
  std::map<CellId, std::string> neighbors;
  for (const CellId& n :
       NeighborhoodOf(config.grid, request.assigned_cell,
                      config.neighborhood_size)
           .Neighbors()) {
    neighbors[n] = request.neighbor_addresses.at(n);
  }
  HttpExchange exchange(std::move(neighbors), config.fetch_timeout_ms,
                        [this](SnapshotPtr s) { PublishSnapshot(s); });

  CellRunHooks hooks;
  hooks.should_stop = [this] { return stop_requested_.load(); };
  hooks.on_iteration = [this](const IterationRecord& rec) {
    Touch();
    if (options_.die_at_iteration >= 0 &&
        rec.iteration >= options_.die_at_iteration) {
      LOG(WARNING) << "fault injection: client " << address()
                   << " dying at iteration " << rec.iteration;
      Kill();
    }
  };

  CellResult result;
  try {
    result = RunCellLoop(config, request.assigned_cell, request.experiment_id,
                         exchange, hooks);
  } catch (const std::exception& e) {
    result.experiment_id = request.experiment_id;
    result.cell = request.assigned_cell;
    result.outcome = CellOutcome::kFailed;
    result.error = e.what();
  }
  if (killed_) return;  // a dead process reports nothing

  auto body = std::make_shared<const std::string>(ToJson(result).dump());
  std::lock_guard<std::mutex> lock(mu_);
  results_ = std::move(body);
  status_.state = ClientState::kIdle;
  status_.last_experiment_id = request.experiment_id;
  status_.last_outcome = result.outcome == CellOutcome::kCompleted ? "completed"
                         : result.outcome == CellOutcome::kFailed  ? "failed"
                                                                   : "aborted";
  status_.experiment_id.reset();
  status_.last_heartbeat_ms = NowMs();
}

}  // namespace coevgan
