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

#include "coevgan/seeding.h"

namespace coevgan {

std::mt19937_64 SeedHierarchy(std::uint64_t master_seed, const CellId& cell,
                              Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(cell.row),
                    static_cast<std::uint32_t>(cell.col),
                    static_cast<std::uint32_t>(stream), 0x636f6576u};
  return std::mt19937_64(seq);
}

}  // namespace coevgan
