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

#ifndef COEVGAN_GRID_H_
#define COEVGAN_GRID_H_

#include <compare>
#include <string>
#include <vector>

namespace coevgan {

struct CellId {
  int row = 0;
  int col = 0;

  auto operator<=>(const CellId&) const = default;
  std::string ToString() const;
};

// Toroidal grid of rows x cols cells.
struct GridSpec {
  int rows = 1;
  int cols = 1;

  int CellCount() const { return rows * cols; }
  bool Contains(const CellId& cell) const;
  // Row-major linear index.
  int IndexOf(const CellId& cell) const;
  CellId CellAt(int index) const;
  std::vector<CellId> AllCells() const;

  bool operator==(const GridSpec&) const = default;
};

// Cells visible to one center cell. The center is always members[0] and no
// cell appears twice.
struct NeighborhoodSpec {
  int size = 5;
  std::vector<CellId> members;

  const CellId& center() const { return members.front(); }
  std::vector<CellId> Neighbors() const;
};

// Von Neumann neighborhood {center, up, down, left, right} with wrap-around.
// Members that coincide on small grids are collapsed to their first
// occurrence. Only k = 5 and k = 1 (center alone) are supported; other sizes
// throw std::invalid_argument.
NeighborhoodSpec NeighborhoodOf(const GridSpec& grid, const CellId& cell,
                                int k = 5);

}  // namespace coevgan

#endif  // COEVGAN_GRID_H_
