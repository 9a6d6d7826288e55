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

#include "coevgan/records.h"

#include <algorithm>

namespace coevgan {

std::string CellOutcomeName(CellOutcome outcome) {
  switch (outcome) {
    case CellOutcome::kCompleted:
      return "completed";
    case CellOutcome::kFailed:
      return "failed";
    case CellOutcome::kKilled:
      return "killed";
  }
  return "unknown";
}

RunReport BuildReport(const std::string& experiment_id,
                      const std::vector<CellResult>& results,
                      const std::vector<CellId>& extra_failures) {
  RunReport report;
  report.experiment_id = experiment_id;
  for (const CellResult& r : results) {
    if (r.outcome != CellOutcome::kCompleted) {
      report.failures.push_back(r.cell);
      continue;
    }
    report.ranking.push_back({r.cell, r.final_score});
    report.final_scores[r.cell] = r.final_score;
  }
  for (const CellId& c : extra_failures) {
    if (std::find(report.failures.begin(), report.failures.end(), c) ==
        report.failures.end()) {
      report.failures.push_back(c);
    }
  }
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [](const RankedMixture& a, const RankedMixture& b) {
                     return a.score < b.score;
                   });
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

}  // namespace coevgan
