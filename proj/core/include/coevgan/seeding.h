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

#ifndef COEVGAN_SEEDING_H_
#define COEVGAN_SEEDING_H_

#include <cstdint>
#include <random>

#include "coevgan/grid.h"

namespace coevgan {

// Purpose of a random stream within one cell.
enum class Stream : std::uint32_t {
  kInit = 1,
  kData = 2,
  kStep = 3,
  kMixture = 4,
  kReference = 5,
  kFinal = 6,
};

// Reproducible generator keyed by (master seed, cell, stream). Distinct keys
// give independent streams.
std::mt19937_64 SeedHierarchy(std::uint64_t master_seed, const CellId& cell,
                              Stream stream);

}  // namespace coevgan

#endif  // COEVGAN_SEEDING_H_
