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

#include "symfill/traversal.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <string>

namespace symfill {
namespace {

constexpr std::size_t kStagingEntries = 64;

std::string where(slot_t slot, vertex_t v) {
  return "slot " + std::to_string(slot) + ", vertex " + std::to_string(v);
}

RelaxOutcome relax_upper(TraversalState& state, slot_t slot, vertex_t neighbor) {
  RelaxOutcome out;
  out.new_fill = state.try_stamp(slot, neighbor);
  return out;
}

RelaxOutcome relax_lower(TraversalState& state, slot_t slot, vertex_t new_max, vertex_t neighbor) {
  RelaxOutcome out;
  const auto min = state.lower_max_id(slot, neighbor, new_max);
  out.previous = min.previous;
  if (!min.updated) {
    out.next = min.previous;
    return out;
  }
  out.updated = true;
  out.next = new_max;
  bool stamped_before = false;
  if (new_max < neighbor) {
    out.new_fill = state.try_stamp(slot, neighbor);
    stamped_before = !out.new_fill;
  } else {
    stamped_before = state.is_stamped(slot, neighbor);
  }
  out.enqueue = !stamped_before;
  return out;
}

vertex_t proposal(const TraversalState& state, slot_t slot, vertex_t frontier) {
  return std::max(state.max_id(slot, frontier), frontier);
}

RelaxOutcome relax(TraversalState& state, slot_t slot, vertex_t src, vertex_t new_max, vertex_t neighbor,
                   AccessOrder order) {
  if (neighbor > src) return relax_upper(state, slot, neighbor);
  if (order == AccessOrder::FillFirst && state.is_stamped(slot, neighbor)) {
    RelaxOutcome out;
    out.previous = out.next = state.max_id(slot, neighbor);
    return out;
  }
  return relax_lower(state, slot, new_max, neighbor);
}

void note_update(WorkerLocal& local, const RelaxOutcome& r, slot_t slot, vertex_t v, bool log,
                 std::uint32_t iteration) {
  ++local.maxid_updates;
  if (r.previous != kUnreached) ++local.re_relaxations;
  if (log) local.updates.push_back({iteration, slot, v, r.previous, r.next});
}

}  // namespace

TraversalState::TraversalState(vertex_t n, bool checked) : n_(n), checked_(checked) {}

void TraversalState::begin_wave(std::span<const vertex_t> sources, std::span<std::uint32_t> fill_cells,
                                std::span<std::uint64_t> maxid_cells, std::span<const std::uint64_t> offsets,
                                const EpochCodec& codec) {
  if (offsets.size() != sources.size() + 1) throw DimensionError("maxId offsets do not match the sources");
  if (fill_cells.size() < sources.size() * std::size_t{n_}) throw ArenaExhausted("fill region too small");
  if (maxid_cells.size() < offsets.back()) throw ArenaExhausted("maxId region too small");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] >= n_) throw RangeError("source " + std::to_string(sources[i]) + " outside the graph");
    if (offsets[i + 1] - offsets[i] < sources[i]) {
      throw ArenaExhausted("maxId slice of slot " + std::to_string(i) + " cannot hold its source");
    }
  }
  sources_.assign(sources.begin(), sources.end());
  fill_ = fill_cells;
  maxid_ = maxid_cells;
  offsets_.assign(offsets.begin(), offsets.end());
  codec_ = &codec;
  if (std::numeric_limits<std::uint32_t>::max() - next_stamp_ < sources.size()) {
    std::fill(fill_.begin(), fill_.end(), 0u);
    next_stamp_ = 1;
    ++stamp_resets_;
  }
  stamps_.resize(sources.size());
  for (auto& s : stamps_) s = next_stamp_++;
}

void TraversalState::check_slot(slot_t slot) const {
  if (slot >= sources_.size()) throw InvariantViolation("slot " + std::to_string(slot) + " is not active");
}

void TraversalState::check_maxid(slot_t slot, vertex_t v) const {
  check_slot(slot);
  if (v >= sources_[slot] || offsets_[slot] + v >= offsets_[slot + 1]) {
    throw InvariantViolation("maxId access outside the trimmed slice at " + where(slot, v));
  }
}

vertex_t TraversalState::max_id(slot_t slot, vertex_t v) const {
  if (checked_) check_maxid(slot, v);
  const std::uint64_t raw = std::atomic_ref<std::uint64_t>(cell(slot, v)).load(std::memory_order_relaxed);
  if (checked_ && !codec_->plausible(raw)) {
    throw InvariantViolation("maxId cell below the current epoch at " + where(slot, v));
  }
  return codec_->decode(raw);
}

bool TraversalState::is_stamped(slot_t slot, vertex_t v) const {
  if (checked_) {
    check_slot(slot);
    if (v >= n_) throw InvariantViolation("fill mark outside the graph at " + where(slot, v));
  }
  return std::atomic_ref<std::uint32_t>(mark(slot, v)).load(std::memory_order_relaxed) == stamps_[slot];
}

bool TraversalState::try_stamp(slot_t slot, vertex_t v) {
  if (checked_) {
    check_slot(slot);
    if (v >= n_) throw InvariantViolation("fill mark outside the graph at " + where(slot, v));
  }
  std::atomic_ref<std::uint32_t> m(mark(slot, v));
  if (m.load(std::memory_order_relaxed) == stamps_[slot]) return false;
  return m.exchange(stamps_[slot], std::memory_order_relaxed) != stamps_[slot];
}

TraversalState::MinResult TraversalState::lower_max_id(slot_t slot, vertex_t v, vertex_t value) {
  if (checked_) check_maxid(slot, v);
  std::atomic_ref<std::uint64_t> c(cell(slot, v));
  const std::uint64_t encoded = codec_->encode(value);
  std::uint64_t cur = c.load(std::memory_order_relaxed);
  while (encoded < cur) {
    if (c.compare_exchange_weak(cur, encoded, std::memory_order_relaxed)) return {true, codec_->decode(cur)};
  }
  return {false, codec_->decode(cur)};
}

void WorkerLocal::ensure_slots(std::size_t slots) {
  if (insertions.size() < slots) insertions.resize(slots, 0);
  if (slot_edges.size() < slots) slot_edges.resize(slots, 0);
}

void WorkerLocal::reset(std::size_t slots) {
  structure.clear();
  updates.clear();
  insertions.assign(slots, 0);
  slot_edges.assign(slots, 0);
  traversed_edges = 0;
  maxid_updates = 0;
  re_relaxations = 0;
}

std::vector<FrontierEntry> init_source(const CsrGraph& g, TraversalState& state, slot_t slot, WorkerLocal& local,
                                       bool log_updates) {
  const vertex_t src = state.source(slot);
  std::vector<FrontierEntry> out;
  local.ensure_slots(state.slots());
  for (vertex_t w : g.neighbors(src)) {
    ++local.traversed_edges;
    ++local.slot_edges[slot];
    state.try_stamp(slot, w);
    local.structure.push_back({w, slot});
    if (w > src) continue;
    RelaxOutcome r;
    const auto min = state.lower_max_id(slot, w, 0);
    r.previous = min.previous;
    r.next = 0;
    if (min.updated) note_update(local, r, slot, w, log_updates, 0);
    out.push_back({w, slot});
    ++local.insertions[slot];
  }
  return out;
}

RelaxOutcome relax_neighbor(TraversalState& state, slot_t slot, vertex_t frontier, vertex_t neighbor) {
  const vertex_t src = state.source(slot);
  if (neighbor == src) return {};
  if (neighbor > src) return relax_upper(state, slot, neighbor);
  return relax_lower(state, slot, proposal(state, slot, frontier), neighbor);
}

RelaxOutcome relax_neighbor_fill_first(TraversalState& state, slot_t slot, vertex_t frontier, vertex_t neighbor) {
  const vertex_t src = state.source(slot);
  if (neighbor == src) return {};
  return relax(state, slot, src, proposal(state, slot, frontier), neighbor, AccessOrder::FillFirst);
}

namespace {

template <typename Get>
void process_entries(const CsrGraph& g, TraversalState& state, std::size_t size, Get get, NextFrontier& next,
                     std::span<WorkerLocal> locals, const BatchOptions& options) {
  if (size == 0) return;
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(locals.size())));
  const auto count = static_cast<std::int64_t>(size);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> failed{false};

#pragma omp parallel num_threads(threads) if (threads > 1 && count > 1)
  {
    WorkerLocal& local = locals[omp_get_thread_num()];
    local.ensure_slots(state.slots());
    std::array<FrontierEntry, kStagingEntries> staging;
    std::size_t staged = 0;
    auto fail = [&] {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    };
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < count; ++k) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        const FrontierEntry e = get(static_cast<std::size_t>(k));
        const vertex_t src = state.source(e.slot);
        const vertex_t new_max = proposal(state, e.slot, e.vertex);
        const auto neighbors = g.neighbors(e.vertex);
        local.traversed_edges += neighbors.size();
        local.slot_edges[e.slot] += neighbors.size();
        for (vertex_t w : neighbors) {
          if (w == src) continue;
          const RelaxOutcome r = relax(state, e.slot, src, new_max, w, options.order);
          if (r.updated) note_update(local, r, e.slot, w, options.log_updates, options.iteration);
          if (r.new_fill) local.structure.push_back({w, e.slot});
          if (!r.enqueue) continue;
          ++local.insertions[e.slot];
          staging[staged++] = {w, e.slot};
          if (staged == staging.size()) {
            next.append({staging.data(), staged});
            staged = 0;
          }
        }
      } catch (...) {
        fail();
      }
    }
    try {
      next.append({staging.data(), staged});
    } catch (...) {
      fail();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void process_batch(const CsrGraph& g, TraversalState& state, std::span<const FrontierEntry> batch,
                   NextFrontier& next, std::span<WorkerLocal> locals, const BatchOptions& options) {
  process_entries(g, state, batch.size(), [batch](std::size_t k) { return batch[k]; }, next, locals, options);
}

void process_batch(const CsrGraph& g, TraversalState& state, const FrontierBatch& batch, NextFrontier& next,
                   std::span<WorkerLocal> locals, const BatchOptions& options) {
  process_entries(g, state, batch.size(), [&batch](std::size_t k) { return batch.entry(k); }, next, locals,
                  options);
}

std::vector<FrontierEntry> process_batch(const CsrGraph& g, TraversalState& state,
                                         std::span<const FrontierEntry> batch, WorkerLocal& local,
                                         const BatchOptions& options) {
  FrontierBatch out(std::max<std::size_t>(batch.size(), 1) * std::max<std::size_t>(g.n(), 1));
  SpillStore spill;
  NextFrontier next(out, spill);
  BatchOptions single = options;
  single.threads = 1;
  process_batch(g, state, batch, next, {&local, 1}, single);
  std::vector<FrontierEntry> result = spill.reload(spill.size());
  const auto resident = out.entries();
  result.insert(result.end(), resident.begin(), resident.end());
  return result;
}

StandaloneState::StandaloneState(vertex_t n, std::vector<vertex_t> sources, bool checked)
    : codec_(std::max<vertex_t>(n, 1)), state_(n, checked) {
  const ArenaLayout& layout = arena_.repartition(n, sources, 1, codec_.sentinel(), true);
  state_.begin_wave(sources, arena_.view<std::uint32_t>(layout.fill), arena_.view<std::uint64_t>(layout.maxid),
                    layout.maxid_offsets, codec_);
}

}  // namespace symfill
