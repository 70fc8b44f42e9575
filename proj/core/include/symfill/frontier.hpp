// Copyright 2026 The symfill Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "symfill/types.hpp"

namespace symfill {

/// A queued frontier vertex and the slot of the source that reached it.
struct FrontierEntry {
  vertex_t vertex = 0;
  slot_t slot = 0;
  friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
  friend auto operator<=>(const FrontierEntry&, const FrontierEntry&) = default;
};

/// FIFO overflow store for frontier entries, kept outside the arena. Holds
/// entries in memory by default, or in a scratch file when given a path.
class SpillStore {
 public:
  SpillStore() = default;
  /// File-backed store; the file is created (truncated) lazily and removed on
  /// destruction. Throws SpillIOError if it cannot be opened.
  explicit SpillStore(std::string path);
  ~SpillStore();
  SpillStore(SpillStore&&) noexcept;
  SpillStore& operator=(SpillStore&&) noexcept;
  SpillStore(const SpillStore&) = delete;
  SpillStore& operator=(const SpillStore&) = delete;

  bool file_backed() const noexcept { return !path_.empty(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Appends entries at the back; one call counts as one spill event.
  void spill(std::span<const FrontierEntry> entries);
  /// Removes up to max_entries from the front, oldest first.
  std::vector<FrontierEntry> reload(std::size_t max_entries);

  std::uint64_t spill_events() const noexcept { return spill_events_; }
  std::uint64_t entries_spilled() const noexcept { return entries_spilled_; }
  std::uint64_t entries_reloaded() const noexcept { return entries_reloaded_; }
  /// Order-independent multiset hashes of everything spilled and reloaded.
  std::uint64_t spilled_digest() const noexcept { return spilled_digest_; }
  std::uint64_t reloaded_digest() const noexcept { return reloaded_digest_; }

 private:
  void close() noexcept;

  std::string path_;
  std::FILE* file_ = nullptr;
  std::uint64_t read_pos_ = 0;
  std::deque<FrontierEntry> memory_;
  std::size_t size_ = 0;
  std::uint64_t spill_events_ = 0;
  std::uint64_t entries_spilled_ = 0;
  std::uint64_t entries_reloaded_ = 0;
  std::uint64_t spilled_digest_ = 0;
  std::uint64_t reloaded_digest_ = 0;
};

/// Hash of one entry; summing it over a multiset gives its digest.
std::uint64_t entry_digest(const FrontierEntry& e) noexcept;

/// A combined frontier queue with its parallel tracker of slot indices.
/// Either owns its storage or views two arena arrays of equal length.
class FrontierBatch {
 public:
  FrontierBatch() = default;
  explicit FrontierBatch(std::size_t capacity);
  FrontierBatch(std::span<vertex_t> queue, std::span<slot_t> tracker);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return queue_.size(); }
  bool empty() const noexcept { return size_ == 0; }
  bool full() const noexcept { return size_ == capacity(); }

  vertex_t vertex(std::size_t i) const noexcept { return queue_[i]; }
  slot_t slot(std::size_t i) const noexcept { return tracker_[i]; }
  FrontierEntry entry(std::size_t i) const noexcept { return {queue_[i], tracker_[i]}; }
  std::span<const vertex_t> queue() const noexcept { return queue_.first(size_); }
  std::span<const slot_t> tracker() const noexcept { return tracker_.first(size_); }
  std::vector<FrontierEntry> entries() const;

  /// False when full.
  bool push(FrontierEntry e) noexcept;
  /// Pushes, spilling the resident entries first when the batch is full.
  void append(FrontierEntry e, SpillStore& spill);
  void clear() noexcept { size_ = 0; }
  /// Largest size since construction or the last reset_peak().
  std::size_t peak() const noexcept { return peak_; }
  void reset_peak() noexcept { peak_ = size_; }

 private:
  std::vector<vertex_t> owned_queue_;
  std::vector<slot_t> owned_tracker_;
  std::span<vertex_t> queue_;
  std::span<slot_t> tracker_;
  std::size_t size_ = 0;
  std::size_t peak_ = 0;
};

/// Moves every resident entry of `batch` to the spill store, oldest first,
/// leaving the batch empty.
void spill_frontiers(FrontierBatch& batch, SpillStore& spill);

/// Refills `batch` from the front of the spill store up to its capacity.
/// Returns the number of entries reloaded.
std::size_t reload_frontiers(SpillStore& spill, FrontierBatch& batch);

/// The next-iteration batch shared by all workers of a wave. Appends are
/// serialized; overflow goes to the paired spill store.
class NextFrontier {
 public:
  NextFrontier(FrontierBatch& batch, SpillStore& spill) : batch_(batch), spill_(spill) {}
  void append(std::span<const FrontierEntry> entries);

 private:
  std::mutex mutex_;
  FrontierBatch& batch_;
  SpillStore& spill_;
};

}  // namespace symfill
