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

#include "symfill/arena.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <numeric>
#include <string>

namespace symfill {
namespace {

constexpr std::size_t align_up(std::size_t bytes) noexcept {
  return (bytes + kArenaAlignment - 1) / kArenaAlignment * kArenaAlignment;
}

std::size_t fixed_bytes(vertex_t n, std::span<const vertex_t> sources) {
  const std::size_t fill = align_up(sources.size() * n * kFillCellBytes);
  const std::uint64_t cells = std::accumulate(sources.begin(), sources.end(), std::uint64_t{0});
  return fill + align_up(cells * kMaxIdCellBytes);
}

// Each of the four frontier arrays holds `capacity` 4-byte cells.
std::size_t frontier_bytes(std::size_t capacity) noexcept { return 4 * align_up(capacity * sizeof(vertex_t)); }

std::size_t capacity_for(std::size_t bytes) noexcept {
  return bytes / (4 * kArenaAlignment) * (kArenaAlignment / sizeof(vertex_t));
}

}  // namespace

std::vector<Region> ArenaLayout::regions() const {
  return {fill, maxid, queue[0], tracker[0], queue[1], tracker[1]};
}

std::vector<std::uint64_t> maxid_offsets(std::span<const vertex_t> sources) {
  std::vector<std::uint64_t> out(sources.size() + 1, 0);
  for (std::size_t i = 0; i < sources.size(); ++i) out[i + 1] = out[i] + sources[i];
  return out;
}

std::uint64_t trimmed_cells(vertex_t n, std::span<const vertex_t> sources) {
  const std::uint64_t c = sources.size();
  return 5 * c * n + std::accumulate(sources.begin(), sources.end(), std::uint64_t{0});
}

std::size_t required_bytes(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries) {
  return fixed_bytes(n, sources) + frontier_bytes(std::max<std::size_t>(floor_entries, 1));
}

ArenaLayout plan_layout(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries,
                        std::uint64_t budget_bytes) {
  for (vertex_t s : sources) {
    if (s >= n) throw RangeError("source " + std::to_string(s) + " outside the graph");
  }
  floor_entries = std::max<std::size_t>(floor_entries, 1);
  ArenaLayout layout;
  layout.n = n;
  layout.sources.assign(sources.begin(), sources.end());
  layout.maxid_offsets = maxid_offsets(sources);
  layout.fill = {0, sources.size() * n * kFillCellBytes};
  layout.maxid = {align_up(layout.fill.end()), layout.maxid_offsets.back() * kMaxIdCellBytes};
  const std::size_t frontier_start = align_up(layout.maxid.end());

  std::size_t capacity = 0;
  if (budget_bytes == 0) {
    capacity = std::max<std::size_t>(std::size_t{n} * sources.size(), floor_entries);
  } else {
    if (frontier_start + frontier_bytes(floor_entries) > budget_bytes) {
      throw ArenaExhausted("budget of " + std::to_string(budget_bytes) + " bytes cannot hold " +
                           std::to_string(sources.size()) + " sources with a frontier floor of " +
                           std::to_string(floor_entries));
    }
    capacity = capacity_for(budget_bytes - frontier_start);
  }
  layout.frontier_capacity = capacity;
  const std::size_t array_bytes = capacity * sizeof(vertex_t);
  std::size_t at = frontier_start;
  for (int b = 0; b < 2; ++b) {
    layout.queue[b] = {at, array_bytes};
    at = align_up(layout.queue[b].end());
    layout.tracker[b] = {at, array_bytes};
    at = align_up(layout.tracker[b].end());
  }
  layout.total_bytes = at;
  return layout;
}

std::size_t shrink_concurrency(std::size_t requested, std::uint64_t budget_bytes, vertex_t n,
                               std::span<const vertex_t> upcoming, std::size_t floor_entries) {
  if (requested == 0) throw InvalidConfig("concurrency must be at least 1");
  const std::size_t limit = std::min(requested, upcoming.size());
  if (budget_bytes == 0) return std::max<std::size_t>(limit, 1);
  std::size_t best = 0;
  for (std::size_t c = 1; c <= limit; ++c) {
    if (required_bytes(n, upcoming.first(c), floor_entries) > budget_bytes) break;
    best = c;
  }
  if (best == 0 && limit > 0) {
    throw ConfigurationInfeasible("budget of " + std::to_string(budget_bytes) + " bytes cannot hold source " +
                                  std::to_string(upcoming.front()) + " with a frontier floor of " +
                                  std::to_string(floor_entries) + " entries (needs " +
                                  std::to_string(required_bytes(n, upcoming.first(1), floor_entries)) + ")");
  }
  return std::max<std::size_t>(best, 1);
}

void Arena::Deleter::operator()(std::byte* p) const noexcept {
  ::operator delete[](p, std::align_val_t{kArenaAlignment});
}

Arena::Arena(std::uint64_t budget_bytes) : budget_(budget_bytes) {
  if (bounded()) ensure_capacity(budget_);
}

void Arena::ensure_capacity(std::size_t bytes) {
  if (bytes <= capacity_) return;
  data_.reset(static_cast<std::byte*>(::operator new[](bytes, std::align_val_t{kArenaAlignment})));
  capacity_ = bytes;
  // Nothing in the new buffer is meaningful yet.
  layout_ = ArenaLayout{};
  fill_valid_ = 0;
  maxid_valid_ = 0;
}

const ArenaLayout& Arena::repartition(vertex_t n, std::span<const vertex_t> sources, std::size_t floor_entries,
                                      std::uint64_t maxid_sentinel, bool reset_maxid) {
  ArenaLayout next = plan_layout(n, sources, floor_entries, budget_);
  ensure_capacity(next.total_bytes);

  // Only the previous fill and maxId regions survived the last wave; the
  // frontier batches may have overwritten anything past them.
  fill_valid_ = std::min(fill_valid_, layout_.fill.bytes);
  if (next.maxid.offset != layout_.maxid.offset || reset_maxid) {
    maxid_valid_ = 0;
  } else {
    maxid_valid_ = std::min(maxid_valid_, layout_.maxid.bytes);
  }
  if (next.n != layout_.n) fill_valid_ = 0;
  layout_ = std::move(next);

  if (layout_.fill.bytes > fill_valid_) {
    std::memset(data_.get() + fill_valid_, 0, layout_.fill.bytes - fill_valid_);
    fill_valid_ = layout_.fill.bytes;
  }
  if (layout_.maxid.bytes > maxid_valid_) {
    auto cells = view<std::uint64_t>(layout_.maxid);
    std::fill(cells.begin() + maxid_valid_ / kMaxIdCellBytes, cells.end(), maxid_sentinel);
    maxid_valid_ = layout_.maxid.bytes;
  }
  high_water_ = std::max(high_water_, layout_.frontier_offset());
  ++repartitions_;
  return layout_;
}

void Arena::note_frontier_peak(std::size_t entries) noexcept {
  if (layout_.sources.empty() && layout_.frontier_capacity == 0) return;
  const std::size_t used = layout_.frontier_offset() + frontier_bytes(std::min(entries, layout_.frontier_capacity));
  high_water_ = std::max(high_water_, used);
}

}  // namespace symfill
