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

// JSON wire format. Real-valued arrays (parameters, optimizer moments,
// mixture weights) travel as base64 of their little-endian IEEE-754 bytes so
// that every bit survives the exchange. Field names are listed in
// docs/protocol.md.

#ifndef COEVGAN_WIRE_H_
#define COEVGAN_WIRE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coevgan/records.h"

namespace coevgan {

using Json = nlohmann::json;

std::string EncodeDoubles(std::span<const double> values);
// Throws ProtocolError on malformed input.
std::vector<double> DecodeDoubles(std::string_view encoded);

Json ToJson(const CellId& cell);
Json ToJson(const Individual& individual);
Json ToJson(const CellSnapshot& snapshot);
Json ToJson(const ClientStatus& status);
Json ToJson(const ExperimentRequest& request);
Json ToJson(const IterationRecord& record);
Json ToJson(const CellResult& result);
Json ToJson(const RunReport& report);

// Generator or discriminator slice of a snapshot.
Json SnapshotSliceJson(const CellSnapshot& snapshot, Role role);

// The From* parsers throw ProtocolError on missing or mistyped fields.
CellId CellIdFromJson(const Json& j);
Individual IndividualFromJson(const Json& j);
CellSnapshot SnapshotFromJson(const Json& j);
ClientStatus StatusFromJson(const Json& j);
ExperimentRequest RequestFromJson(const Json& j);
IterationRecord RecordFromJson(const Json& j);
CellResult ResultFromJson(const Json& j);

}  // namespace coevgan

#endif  // COEVGAN_WIRE_H_
