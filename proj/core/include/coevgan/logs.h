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

// Machine-readable run artifacts:
//   <dir>/cells/cell_<row>_<col>.csv   one row per completed iteration
//   <dir>/grid_scores.json             per-iteration score of every cell
//   <dir>/winner_samples.txt           "x y" lines from the winning mixture
//   <dir>/report.json                  ranking, failures and the paths above

#ifndef COEVGAN_LOGS_H_
#define COEVGAN_LOGS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "coevgan/records.h"

namespace coevgan {

extern const char* const kCsvHeader;

std::string CsvRow(const IterationRecord& record);
void WriteCellCsv(const std::filesystem::path& path,
                  const std::vector<IterationRecord>& history);
std::vector<IterationRecord> ReadCellCsv(const std::filesystem::path& path);

// Writes every artifact into `dir` and fills the report's path fields.
// Throws std::runtime_error naming the path on I/O failure.
void EmitLogs(const std::filesystem::path& dir, const GridSpec& grid,
              const std::vector<CellResult>& results, RunReport& report);

}  // namespace coevgan

#endif  // COEVGAN_LOGS_H_
