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

// Per-cell client: an HTTP server answering status and snapshot reads while
// one training thread runs the assigned cell. Routes are listed in
// docs/protocol.md.

#ifndef COEVGAN_CLIENT_H_
#define COEVGAN_CLIENT_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "coevgan/exchange.h"
#include "coevgan/records.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace coevgan {

// Reads neighbor snapshots over HTTP (GET /snapshot). Each Fetch issues
// exactly one request; the newest published snapshot is returned whatever
// iteration was asked for.
class HttpExchange : public SnapshotExchange {
 public:
  using PublishFn = std::function<void(SnapshotPtr)>;

  HttpExchange(std::map<CellId, std::string> addresses, int timeout_ms,
               PublishFn publish);
  ~HttpExchange() override;

  void Publish(SnapshotPtr snapshot) override;
  FetchResult Fetch(const CellId& neighbor, int iteration) override;

 private:
  struct Connection;

  std::map<CellId, std::string> addresses_;
  int timeout_ms_;
  PublishFn publish_;
  std::map<CellId, std::unique_ptr<Connection>> connections_;
};

struct ClientOptions {
  // Fault injection: once the running cell reaches this iteration the client
  // behaves as if its process died (server closed, training abandoned).
  int die_at_iteration = -1;
};

class ClientRuntime {
 public:
  ClientRuntime(std::string host, int port, ClientOptions options = {});
  ~ClientRuntime();

  ClientRuntime(const ClientRuntime&) = delete;
  ClientRuntime& operator=(const ClientRuntime&) = delete;

  // Binds the port (0 picks a free one) and starts serving. Throws
  // std::runtime_error if the port cannot be bound.
  void Start();
  // Blocks until the server stops.
  void Wait();
  // Graceful shutdown: abort training, stop the server, join threads.
  void Stop();
  // Abrupt failure: the server stops answering at once and training halts at
  // the next iteration boundary.
  void Kill();

  int port() const { return port_; }
  std::string address() const;
  ClientStatus Status() const;
  bool killed() const { return killed_; }

 private:
  void InstallRoutes();
  void Train(ExperimentRequest request);
  void PublishSnapshot(SnapshotPtr snapshot);
  void Touch();

  const std::string host_;
  int port_;
  const ClientOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread server_thread_;
  std::thread training_thread_;

  mutable std::mutex mu_;
  ClientStatus status_;
  // Serialized views of the latest snapshot, swapped together on publish.
  struct Published {
    std::string full;
    std::string generators;
    std::string discriminators;
  };
  std::shared_ptr<const Published> published_;
  std::shared_ptr<const std::string> results_;

  std::atomic<bool> stop_requested_{false};
  std::atomic<bool> killed_{false};
  std::atomic<bool> server_running_{false};
};

}  // namespace coevgan

#endif  // COEVGAN_CLIENT_H_
