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

// Client: coevgan_client --listen host:port

#include <csignal>
#include <iostream>

#include <glog/logging.h>
#include "CLI11.hpp"

#include "coevgan/client.h"

namespace {

coevgan::ClientRuntime* g_runtime = nullptr;

void HandleSignal(int) {
  if (g_runtime) g_runtime->Kill();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coevolutionary GAN grid client"};
  std::string listen = "127.0.0.1:8080";
  int die_at = -1;
  app.add_option("--listen", listen, "host:port to serve on (port 0 = any)");
  app.add_option("--die-at-iteration", die_at,
                 "Fault injection: stop responding at this iteration");
  CLI11_PARSE(app, argc, argv);

  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: --listen expects host:port\n";
    return 1;
  }
  try {
    coevgan::ClientRuntime runtime(listen.substr(0, colon),
                                   std::stoi(listen.substr(colon + 1)),
                                   coevgan::ClientOptions{die_at});
    runtime.Start();
    g_runtime = &runtime;
    std::signal(SIGINT, HandleSignal);
    std::signal(SIGTERM, HandleSignal);
    std::cout << "listening on " << runtime.address() << std::endl;
    runtime.Wait();
    g_runtime = nullptr;
    runtime.Stop();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
