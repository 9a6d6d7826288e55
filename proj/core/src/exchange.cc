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

#include "coevgan/exchange.h"

#include <algorithm>
#include <limits>

#include "coevgan/wire.h"

namespace coevgan {
namespace {

class BoardExchange : public SnapshotExchange {
 public:
  BoardExchange(InMemoryBoard* board, CellId cell)
      : board_(board), cell_(cell) {}

  void Publish(SnapshotPtr snapshot) override {
    board_->Publish(std::move(snapshot));
  }
  FetchResult Fetch(const CellId& neighbor, int iteration) override {
    return board_->Fetch(neighbor, iteration);
  }
  void MarkFinished(const CellId& cell) override { board_->MarkFinished(cell); }

 private:
  InMemoryBoard* board_;
  CellId cell_;
};

}  // namespace

void InMemoryBoard::Publish(SnapshotPtr snapshot) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    history_[snapshot->cell][snapshot->iteration] = std::move(snapshot);
    PruneLocked();
  }
  cv_.notify_all();
}

void InMemoryBoard::PruneLocked() {
  // Nobody reads below the slowest cell's latest iteration minus one.
  int slowest = std::numeric_limits<int>::max();
  for (const auto& [cell, snaps] : history_) {
    if (finished_.count(cell) || snaps.empty()) continue;
    slowest = std::min(slowest, snaps.rbegin()->first);
  }
  if (slowest == std::numeric_limits<int>::max()) return;
  for (auto& [cell, snaps] : history_) {
    while (snaps.size() > 1 && snaps.begin()->first < slowest - 1) {
      snaps.erase(snaps.begin());
    }
  }
}

FetchResult InMemoryBoard::Fetch(const CellId& neighbor, int iteration) {
  std::unique_lock<std::mutex> lock(mu_);
  SnapshotPtr found;
  if (lockstep_) {
    cv_.wait(lock, [&] {
      if (finished_.count(neighbor)) return true;
      auto it = history_.find(neighbor);
      return it != history_.end() && !it->second.empty() &&
             it->second.rbegin()->first >= iteration;
    });
    auto it = history_.find(neighbor);
    if (it != history_.end()) {
      auto exact = it->second.find(iteration);
      if (exact != it->second.end()) {
        found = exact->second;
      } else if (!it->second.empty()) {
        // Neighbor finished early or history was pruned; newest at or below.
        auto below = it->second.upper_bound(iteration);
        found = below == it->second.begin() ? it->second.begin()->second
                                            : std::prev(below)->second;
      }
    }
  } else {
    auto it = history_.find(neighbor);
    if (it != history_.end() && !it->second.empty()) {
      found = it->second.rbegin()->second;
    }
  }
  lock.unlock();
  FetchResult r;
  r.snapshot = found;
  if (found && measure_bytes_) {
    r.bytes = static_cast<std::int64_t>(ToJson(*found).dump().size());
  }
  return r;
}

void InMemoryBoard::MarkFinished(const CellId& cell) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    finished_.insert(cell);
  }
  cv_.notify_all();
}

SnapshotPtr InMemoryBoard::Latest(const CellId& cell) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = history_.find(cell);
  if (it == history_.end() || it->second.empty()) return nullptr;
  return it->second.rbegin()->second;
}

std::unique_ptr<SnapshotExchange> InMemoryBoard::ExchangeFor(
    const CellId& cell) {
  return std::make_unique<BoardExchange>(this, cell);
}

}  // namespace coevgan
