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

#include "coevgan/wire.h"

#include <bit>
#include <cstring>

#include <sodium.h>

#include "coevgan/errors.h"

namespace coevgan {
namespace {

static_assert(std::endian::native == std::endian::little,
              "wire format assumes a little-endian host");

template <typename T>
T Get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("field '") + key + "': " + e.what());
  }
}

std::optional<double> OptionalDouble(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return Get<double>(j, key);
}

Json OptionalJson(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json OptionalJson(const std::optional<std::string>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json BatchToJson(const Batch& b) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < b.cols(); ++k) row.push_back(b(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Batch BatchFromJson(const Json& j) {
  if (!j.is_array()) throw ProtocolError("samples must be an array");
  if (j.empty()) return Batch(0, 0);
  const std::size_t cols = j.front().size();
  Batch b(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) throw ProtocolError("ragged sample rows");
    for (std::size_t k = 0; k < cols; ++k) b(i, k) = j[i][k].get<double>();
  }
  return b;
}

CellOutcome ParseOutcome(const std::string& s) {
  if (s == "completed") return CellOutcome::kCompleted;
  if (s == "failed") return CellOutcome::kFailed;
  if (s == "killed") return CellOutcome::kKilled;
  throw ProtocolError("unknown outcome '" + s + "'");
}

}  // namespace

std::string EncodeDoubles(std::span<const double> values) {
  if (sodium_init() < 0) throw ProtocolError("libsodium unavailable");
  const std::size_t bytes = values.size() * sizeof(double);
  const int variant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(bytes, variant), '\0');
  sodium_bin2base64(out.data(), out.size(),
                    reinterpret_cast<const unsigned char*>(values.data()),
                    bytes, variant);
  out.resize(std::strlen(out.c_str()));
  return out;
}

std::vector<double> DecodeDoubles(std::string_view encoded) {
  if (sodium_init() < 0) throw ProtocolError("libsodium unavailable");
  std::vector<unsigned char> raw(encoded.size() * 3 / 4 + 3);
  std::size_t len = 0;
  if (sodium_base642bin(raw.data(), raw.size(), encoded.data(), encoded.size(),
                        nullptr, &len, nullptr,
                        sodium_base64_VARIANT_ORIGINAL) != 0) {
    throw ProtocolError("malformed base64 array");
  }
  if (len % sizeof(double) != 0) {
    throw ProtocolError("base64 array length is not a multiple of 8 bytes");
  }
  std::vector<double> values(len / sizeof(double));
  std::memcpy(values.data(), raw.data(), len);
  return values;
}

Json ToJson(const CellId& cell) {
  return {{"row", cell.row}, {"col", cell.col}};
}

CellId CellIdFromJson(const Json& j) {
  return {Get<int>(j, "row"), Get<int>(j, "col")};
}

Json ToJson(const Individual& ind) {
  const OptimizerState& opt = ind.optimizer;
  Json optimizer = {
      {"kind", opt.kind == OptimizerKind::kAdam ? "adam" : "sgd"},
      {"step_count", opt.step_count},
      {"first_moment", EncodeDoubles(opt.first_moment)},
      {"second_moment", EncodeDoubles(opt.second_moment)},
      {"beta1", opt.beta1},
      {"beta2", opt.beta2},
      {"epsilon", opt.epsilon},
  };
  return {
      {"role", RoleName(ind.role)},
      {"params", EncodeDoubles(ind.params)},
      {"learning_rate", ind.learning_rate},
      {"optimizer", std::move(optimizer)},
      {"fitness", OptionalJson(ind.fitness)},
      {"source_cell", ToJson(ind.source_cell)},
      {"iteration", ind.iteration},
  };
}

Individual IndividualFromJson(const Json& j) {
  Individual ind;
  try {
    ind.role = ParseRole(Get<std::string>(j, "role"));
  } catch (const std::invalid_argument& e) {
    throw ProtocolError(e.what());
  }
  ind.params = DecodeDoubles(Get<std::string>(j, "params"));
  ind.learning_rate = Get<double>(j, "learning_rate");
  const Json& o = j.at("optimizer");
  const std::string kind = Get<std::string>(o, "kind");
  if (kind == "adam") {
    ind.optimizer.kind = OptimizerKind::kAdam;
  } else if (kind == "sgd") {
    ind.optimizer.kind = OptimizerKind::kSgd;
  } else {
    throw ProtocolError("unknown optimizer '" + kind + "'");
  }
  ind.optimizer.step_count = Get<std::int64_t>(o, "step_count");
  ind.optimizer.first_moment =
      DecodeDoubles(Get<std::string>(o, "first_moment"));
  ind.optimizer.second_moment =
      DecodeDoubles(Get<std::string>(o, "second_moment"));
  ind.optimizer.beta1 = Get<double>(o, "beta1");
  ind.optimizer.beta2 = Get<double>(o, "beta2");
  ind.optimizer.epsilon = Get<double>(o, "epsilon");
  ind.fitness = OptionalDouble(j, "fitness");
  ind.source_cell = CellIdFromJson(j.at("source_cell"));
  ind.iteration = Get<int>(j, "iteration");
  return ind;
}

Json ToJson(const CellSnapshot& s) {
  return {
      {"cell", ToJson(s.cell)},
      {"iteration", s.iteration},
      {"generator", ToJson(s.generator)},
      {"discriminator", ToJson(s.discriminator)},
      {"weights_g", EncodeDoubles(s.weights_g.values)},
      {"weights_d", EncodeDoubles(s.weights_d.values)},
      {"mixture_score", OptionalJson(s.mixture_score)},
  };
}

CellSnapshot SnapshotFromJson(const Json& j) {
  CellSnapshot s;
  try {
    s.cell = CellIdFromJson(j.at("cell"));
    s.iteration = Get<int>(j, "iteration");
    s.generator = IndividualFromJson(j.at("generator"));
    s.discriminator = IndividualFromJson(j.at("discriminator"));
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("snapshot: ") + e.what());
  }
  s.weights_g.values = DecodeDoubles(Get<std::string>(j, "weights_g"));
  s.weights_d.values = DecodeDoubles(Get<std::string>(j, "weights_d"));
  s.mixture_score = OptionalDouble(j, "mixture_score");
  return s;
}

Json SnapshotSliceJson(const CellSnapshot& s, Role role) {
  const bool gen = role == Role::kGenerator;
  return {
      {"cell", ToJson(s.cell)},
      {"iteration", s.iteration},
      {"individual", ToJson(gen ? s.generator : s.discriminator)},
      {"weights", EncodeDoubles(gen ? s.weights_g.values : s.weights_d.values)},
  };
}

Json ToJson(const ClientStatus& s) {
  return {
      {"state", s.state == ClientState::kIdle ? "idle" : "busy"},
      {"experiment_id", OptionalJson(s.experiment_id)},
      {"last_heartbeat", s.last_heartbeat_ms},
      {"iteration", s.iteration},
      {"last_experiment_id", OptionalJson(s.last_experiment_id)},
      {"last_outcome", OptionalJson(s.last_outcome)},
  };
}

ClientStatus StatusFromJson(const Json& j) {
  ClientStatus s;
  const std::string state = Get<std::string>(j, "state");
  if (state == "idle") {
    s.state = ClientState::kIdle;
  } else if (state == "busy") {
    s.state = ClientState::kBusy;
  } else {
    throw ProtocolError("unknown client state '" + state + "'");
  }
  const auto opt_string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return Get<std::string>(j, key);
  };
  s.experiment_id = opt_string("experiment_id");
  if (j.contains("last_heartbeat")) {
    s.last_heartbeat_ms = Get<std::int64_t>(j, "last_heartbeat");
  }
  if (j.contains("iteration")) s.iteration = Get<int>(j, "iteration");
  s.last_experiment_id = opt_string("last_experiment_id");
  s.last_outcome = opt_string("last_outcome");
  return s;
}

Json ToJson(const ExperimentRequest& r) {
  Json neighbors = Json::array();
  for (const auto& [cell, address] : r.neighbor_addresses) {
    neighbors.push_back({{"cell", ToJson(cell)}, {"address", address}});
  }
  return {
      {"experiment_id", r.experiment_id},
      {"config", SerializeConfig(r.config)},
      {"assigned_cell", ToJson(r.assigned_cell)},
      {"neighbor_addresses", std::move(neighbors)},
  };
}

ExperimentRequest RequestFromJson(const Json& j) {
  ExperimentRequest r;
  if (!j.is_object()) throw ProtocolError("experiment request must be object");
  r.experiment_id = Get<std::string>(j, "experiment_id");
  try {
    r.config = ParseConfig(Get<std::string>(j, "config"));
  } catch (const ConfigError& e) {
    throw ProtocolError(std::string("config: ") + e.what());
  }
  try {
    r.assigned_cell = CellIdFromJson(j.at("assigned_cell"));
    for (const Json& n : j.at("neighbor_addresses")) {
      r.neighbor_addresses[CellIdFromJson(n.at("cell"))] =
          Get<std::string>(n, "address");
    }
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("experiment request: ") + e.what());
  }
  if (!r.config.grid.Contains(r.assigned_cell)) {
    throw ProtocolError("assigned cell outside the configured grid");
  }
  const NeighborhoodSpec spec = NeighborhoodOf(
      r.config.grid, r.assigned_cell, r.config.neighborhood_size);
  for (const CellId& n : spec.Neighbors()) {
    if (!r.neighbor_addresses.count(n)) {
      throw ProtocolError("no address for neighbor " + n.ToString());
    }
  }
  return r;
}

Json ToJson(const IterationRecord& r) {
  return {
      {"iteration", r.iteration},
      {"cell", ToJson(r.cell)},
      {"frechet_proxy", r.frechet_proxy},
      {"tvd", r.tvd},
      {"mode_coverage", r.mode_coverage},
      {"generator_fitness", r.generator_fitness},
      {"discriminator_fitness", r.discriminator_fitness},
      {"learning_rate_g", r.learning_rate_g},
      {"learning_rate_d", r.learning_rate_d},
      {"mixture_score", r.mixture_score},
      {"fetches", r.fetches},
      {"fetch_bytes", r.fetch_bytes},
      {"stale_neighbors", r.stale_neighbors},
      {"replacements", r.replacements},
      {"wall_seconds", r.wall_seconds},
      {"cpu_seconds", r.cpu_seconds},
  };
}

IterationRecord RecordFromJson(const Json& j) {
  IterationRecord r;
  r.iteration = Get<int>(j, "iteration");
  r.cell = CellIdFromJson(j.at("cell"));
  r.frechet_proxy = Get<double>(j, "frechet_proxy");
  r.tvd = Get<double>(j, "tvd");
  r.mode_coverage = Get<int>(j, "mode_coverage");
  r.generator_fitness = Get<double>(j, "generator_fitness");
  r.discriminator_fitness = Get<double>(j, "discriminator_fitness");
  r.learning_rate_g = Get<double>(j, "learning_rate_g");
  r.learning_rate_d = Get<double>(j, "learning_rate_d");
  r.mixture_score = Get<double>(j, "mixture_score");
  r.fetches = Get<int>(j, "fetches");
  r.fetch_bytes = Get<std::int64_t>(j, "fetch_bytes");
  r.stale_neighbors = Get<int>(j, "stale_neighbors");
  r.replacements = Get<int>(j, "replacements");
  r.wall_seconds = Get<double>(j, "wall_seconds");
  r.cpu_seconds = Get<double>(j, "cpu_seconds");
  return r;
}

Json ToJson(const CellResult& r) {
  Json generators = Json::array();
  for (const Individual& g : r.mixture.generators) generators.push_back(ToJson(g));
  Json history = Json::array();
  for (const IterationRecord& h : r.history) history.push_back(ToJson(h));
  return {
      {"experiment_id", r.experiment_id},
      {"cell", ToJson(r.cell)},
      {"outcome", CellOutcomeName(r.outcome)},
      {"error", r.error},
      {"final_snapshot", ToJson(r.final_snapshot)},
      {"mixture",
       {{"generators", std::move(generators)},
        {"weights", EncodeDoubles(r.mixture.weights.values)},
        {"score", OptionalJson(r.mixture.score)}}},
      {"score", r.final_score},
      {"tvd", r.final_tvd},
      {"mode_coverage", r.final_mode_coverage},
      {"samples", BatchToJson(r.samples)},
      {"history", std::move(history)},
      {"aborted_steps", r.aborted_steps},
  };
}

CellResult ResultFromJson(const Json& j) {
  CellResult r;
  try {
    r.experiment_id = Get<std::string>(j, "experiment_id");
    r.cell = CellIdFromJson(j.at("cell"));
    r.outcome = ParseOutcome(Get<std::string>(j, "outcome"));
    r.error = Get<std::string>(j, "error");
    r.final_snapshot = SnapshotFromJson(j.at("final_snapshot"));
    const Json& m = j.at("mixture");
    for (const Json& g : m.at("generators")) {
      r.mixture.generators.push_back(IndividualFromJson(g));
    }
    r.mixture.weights.values = DecodeDoubles(Get<std::string>(m, "weights"));
    r.mixture.score = OptionalDouble(m, "score");
    r.final_score = Get<double>(j, "score");
    r.final_tvd = Get<double>(j, "tvd");
    r.final_mode_coverage = Get<int>(j, "mode_coverage");
    r.samples = BatchFromJson(j.at("samples"));
    for (const Json& h : j.at("history")) r.history.push_back(RecordFromJson(h));
    r.aborted_steps = Get<int>(j, "aborted_steps");
  } catch (const Json::exception& e) {
    throw ProtocolError(std::string("cell result: ") + e.what());
  }
  return r;
}

Json ToJson(const RunReport& r) {
  Json ranking = Json::array();
  for (const RankedMixture& m : r.ranking) {
    ranking.push_back({{"cell", ToJson(m.cell)}, {"score", m.score}});
  }
  Json failures = Json::array();
  for (const CellId& c : r.failures) failures.push_back(ToJson(c));
  Json winner = r.winner() ? ToJson(*r.winner()) : Json(nullptr);
  return {
      {"experiment_id", r.experiment_id},
      {"ranking", std::move(ranking)},
      {"winner", std::move(winner)},
      {"failures", std::move(failures)},
      {"csv_paths", r.csv_paths},
      {"winner_samples_path", r.winner_samples_path},
      {"grid_scores_path", r.grid_scores_path},
      {"aborted", r.aborted},
  };
}

}  // namespace coevgan
