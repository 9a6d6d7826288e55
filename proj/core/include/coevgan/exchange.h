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

// How a cell publishes its snapshot and reads its neighbors' snapshots.

#ifndef COEVGAN_EXCHANGE_H_
#define COEVGAN_EXCHANGE_H_

#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "coevgan/records.h"

namespace coevgan {

using SnapshotPtr = std::shared_ptr<const CellSnapshot>;

struct FetchResult {
  SnapshotPtr snapshot;  // null when the neighbor could not be reached
  std::int64_t bytes = 0;
};

class SnapshotExchange {
 public:
  virtual ~SnapshotExchange() = default;

  // Replaces the cell's published snapshot atomically.
  virtual void Publish(SnapshotPtr snapshot) = 0;

  // Reads a neighbor's snapshot. `iteration` is the iteration the caller
  // would ideally see; asynchronous transports may return any newer or older
  // snapshot.
  virtual FetchResult Fetch(const CellId& neighbor, int iteration) = 0;

  // The publishing cell stopped; it will publish nothing further.
  virtual void MarkFinished(const CellId& cell) { (void)cell; }
};

// Snapshot board shared by every cell of a single-process grid.
//
// In lockstep mode Fetch(n, t) blocks until neighbor n has published
// iteration t (or finished) and returns exactly that snapshot, which makes
// runs reproducible regardless of thread scheduling. Otherwise Fetch returns
// the newest snapshot without waiting.
class InMemoryBoard {
 public:
  explicit InMemoryBoard(bool lockstep, bool measure_bytes = false)
      : lockstep_(lockstep), measure_bytes_(measure_bytes) {}

  void Publish(SnapshotPtr snapshot);
  FetchResult Fetch(const CellId& neighbor, int iteration);
  void MarkFinished(const CellId& cell);
  SnapshotPtr Latest(const CellId& cell) const;

  // Exchange bound to one cell.
  std::unique_ptr<SnapshotExchange> ExchangeFor(const CellId& cell);

 private:
  void PruneLocked();

  const bool lockstep_;
  const bool measure_bytes_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::map<CellId, std::map<int, SnapshotPtr>> history_;
  std::set<CellId> finished_;
};

}  // namespace coevgan

#endif  // COEVGAN_EXCHANGE_H_
