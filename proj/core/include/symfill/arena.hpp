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
#include <memory>
#include <span>
#include <vector>

#include "symfill/types.hpp"

namespace symfill {

inline constexpr std::size_t kArenaAlignment = 64;
inline constexpr std::size_t kFillCellBytes = sizeof(std::uint32_t);
inline constexpr std::size_t kMaxIdCellBytes = sizeof(std::uint64_t);
/// One queue cell plus one tracker cell.
inline constexpr std::size_t kFrontierEntryBytes = sizeof(vertex_t) + sizeof(slot_t);
inline constexpr std::size_t kDefaultFrontierFloor = 1024;

struct Region {
  std::size_t offset = 0;
  std::size_t bytes = 0;
  std::size_t end() const noexcept { return offset + bytes; }
  friend bool operator==(const Region&, const Region&) = default;
};

/// Placement of one wave's traversal data inside the arena:
/// [fill marks | maxId slices | queue0 | tracker0 | queue1 | tracker1].
/// Batch 0 and batch 1 alternate as current and next frontier.
struct ArenaLayout {
  vertex_t n = 0;
  std::vector<vertex_t> sources;
  Region fill;
  Region maxid;
  Region queue[2];
  Region tracker[2];
  /// Prefix sums of the slot sizes; slot i owns cells [offsets[i], offsets[i+1]).
  std::vector<std::uint64_t> maxid_offsets;
  std::size_t frontier_capacity = 0;
  std::size_t total_bytes = 0;

  std::size_t slots() const noexcept { return sources.size(); }
  std::size_t frontier_offset() const noexcept { return queue[0].offset; }
  std::vector<Region> regions() const;
};

/// Bubble removal: slot i gets exactly sources[i] cells. Returns slots + 1
/// prefix sums.
std::vector<std::uint64_t> maxid_offsets(std::span<const vertex_t> sources);

/// Cells of the untrimmed layout, six n-sized arrays per concurrent source.
constexpr std::uint64_t untrimmed_cells(vertex_t n, std::size_t concurrency) noexcept {
  return 6ull * n * concurrency;
}
/// The same six arrays with maxId trimmed to the sources.
std::uint64_t trimmed_cells(vertex_t n, std::span<const vertex_t> sources);

/// Smallest arena that holds the fill and maxId regions plus two batches of
/// floor_entries each.
std::size_t required_bytes(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries);

/// Lays out one wave. With budget_bytes == 0 the frontier capacity is
/// max(n * slots, floor_entries); otherwise the fill and maxId regions are
/// placed first and the frontier batches take the rest of the budget.
/// Throws ArenaExhausted when the budget cannot hold the floor.
ArenaLayout plan_layout(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries,
                        std::uint64_t budget_bytes);

/// Largest c <= requested such that the first c of `upcoming` fit the budget
/// with floor_entries per batch. Throws ConfigurationInfeasible when not even
/// one source fits.
std::size_t shrink_concurrency(std::size_t requested, std::uint64_t budget_bytes, vertex_t n,
                               std::span<const vertex_t> upcoming, std::size_t floor_entries);

/// One aligned allocation shared by every traversal structure.
///
/// In budgeted mode the whole budget is allocated once. In unbounded mode the
/// buffer grows to the largest layout seen. Memory is not zeroed on
/// allocation; instead the arena tracks how much of the fill and maxId
/// regions already hold meaningful cells and initializes only the new part
/// on each repartition.
class Arena {
 public:
  explicit Arena(std::uint64_t budget_bytes = 0);

  std::uint64_t budget_bytes() const noexcept { return budget_; }
  bool bounded() const noexcept { return budget_ != 0; }
  std::size_t capacity_bytes() const noexcept { return capacity_; }

  /// Called at a wave barrier. Fill cells outside the previous fill region
  /// are zeroed. maxId cells outside the previous maxId region are set to
  /// maxid_sentinel, and so is the whole maxId region when reset_maxid is
  /// set. Frontier batches are empty at this point.
  const ArenaLayout& repartition(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries,
                                 std::uint64_t maxid_sentinel, bool reset_maxid);

  const ArenaLayout& layout() const noexcept { return layout_; }

  template <typename T>
  std::span<T> view(const Region& r) noexcept {
    return {reinterpret_cast<T*>(data_.get() + r.offset), r.bytes / sizeof(T)};
  }

  /// Records the largest resident frontier seen in the current wave.
  void note_frontier_peak(std::size_t entries) noexcept;
  std::size_t high_water_mark() const noexcept { return high_water_; }
  std::size_t repartitions() const noexcept { return repartitions_; }

 private:
  struct Deleter {
    void operator()(std::byte* p) const noexcept;
  };

  void ensure_capacity(std::size_t bytes);

  std::uint64_t budget_;
  std::unique_ptr<std::byte[], Deleter> data_;
  std::size_t capacity_ = 0;
  ArenaLayout layout_;
  std::size_t fill_valid_ = 0;
  std::size_t maxid_valid_ = 0;
  std::size_t high_water_ = 0;
  std::size_t repartitions_ = 0;
};

}  // namespace symfill
