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

#include "symfill/frontier.hpp"

#include <algorithm>

namespace symfill {

FrontierBatch::FrontierBatch(std::size_t capacity)
    : owned_queue_(capacity), owned_tracker_(capacity), queue_(owned_queue_), tracker_(owned_tracker_) {}

FrontierBatch::FrontierBatch(std::span<vertex_t> queue, std::span<slot_t> tracker)
    : queue_(queue), tracker_(tracker) {
  if (queue.size() != tracker.size()) throw DimensionError("queue and tracker lengths differ");
}

std::vector<FrontierEntry> FrontierBatch::entries() const {
  std::vector<FrontierEntry> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = entry(i);
  return out;
}

bool FrontierBatch::push(FrontierEntry e) noexcept {
  if (full()) return false;
  queue_[size_] = e.vertex;
  tracker_[size_] = e.slot;
  ++size_;
  peak_ = std::max(peak_, size_);
  return true;
}

void FrontierBatch::append(FrontierEntry e, SpillStore& spill) {
  if (capacity() == 0) {
    spill.spill({&e, 1});
    return;
  }
  if (full()) spill_frontiers(*this, spill);
  push(e);
}

void spill_frontiers(FrontierBatch& batch, SpillStore& spill) {
  if (batch.empty()) return;
  spill.spill(batch.entries());
  batch.clear();
}

std::size_t reload_frontiers(SpillStore& spill, FrontierBatch& batch) {
  const std::size_t room = batch.capacity() - batch.size();
  if (room == 0 || spill.empty()) return 0;
  const auto entries = spill.reload(room);
  for (const FrontierEntry& e : entries) batch.push(e);
  return entries.size();
}

void NextFrontier::append(std::span<const FrontierEntry> entries) {
  std::lock_guard lock(mutex_);
  for (const FrontierEntry& e : entries) batch_.append(e, spill_);
}

}  // namespace symfill
