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

#include "coevgan/grid.h"

#include <algorithm>
#include <stdexcept>

namespace coevgan {

std::string CellId::ToString() const {
  return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

bool GridSpec::Contains(const CellId& cell) const {
  return cell.row >= 0 && cell.row < rows && cell.col >= 0 && cell.col < cols;
}

int GridSpec::IndexOf(const CellId& cell) const {
  if (!Contains(cell)) {
    throw std::out_of_range("cell " + cell.ToString() + " outside grid");
  }
  return cell.row * cols + cell.col;
}

CellId GridSpec::CellAt(int index) const {
  if (index < 0 || index >= CellCount()) {
    throw std::out_of_range("cell index " + std::to_string(index));
  }
  return CellId{index / cols, index % cols};
}

std::vector<CellId> GridSpec::AllCells() const {
  std::vector<CellId> cells;
  cells.reserve(CellCount());
  for (int i = 0; i < CellCount(); ++i) cells.push_back(CellAt(i));
  return cells;
}

std::vector<CellId> NeighborhoodSpec::Neighbors() const {
  return {members.begin() + 1, members.end()};
}

NeighborhoodSpec NeighborhoodOf(const GridSpec& grid, const CellId& cell,
                                int k) {
  if (grid.rows < 1 || grid.cols < 1) {
    throw std::invalid_argument("grid dimensions must be >= 1");
  }
  if (!grid.Contains(cell)) {
    throw std::out_of_range("cell " + cell.ToString() + " outside grid");
  }
  if (k != 5 && k != 1) {
    throw std::invalid_argument("neighborhood size " + std::to_string(k) +
                                " unsupported (use 1 or 5)");
  }
  NeighborhoodSpec spec;
  spec.size = k;
  spec.members.push_back(cell);
  if (k == 1) return spec;

  auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
  const CellId candidates[] = {
      {wrap(cell.row - 1, grid.rows), cell.col},
      {wrap(cell.row + 1, grid.rows), cell.col},
      {cell.row, wrap(cell.col - 1, grid.cols)},
      {cell.row, wrap(cell.col + 1, grid.cols)},
  };
  for (const CellId& c : candidates) {
    if (std::find(spec.members.begin(), spec.members.end(), c) ==
        spec.members.end()) {
      spec.members.push_back(c);
    }
  }
  return spec;
}

}  // namespace coevgan
