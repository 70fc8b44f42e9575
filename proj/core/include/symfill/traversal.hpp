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

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "symfill/arena.hpp"
#include "symfill/csr_graph.hpp"
#include "symfill/epoch.hpp"
#include "symfill/frontier.hpp"

namespace symfill {

/// Whether relax checks the fill mark before or after the maxId update.
enum class AccessOrder { MaxIdFirst, FillFirst };

struct RelaxOutcome {
  bool updated = false;
  bool new_fill = false;
  bool enqueue = false;
  vertex_t previous = kUnreached;
  vertex_t next = kUnreached;
};

/// One successful maxId decrease, as logged in checked mode.
struct MaxIdUpdate {
  std::uint32_t iteration = 0;
  slot_t slot = 0;
  vertex_t vertex = 0;
  vertex_t before = kUnreached;
  vertex_t after = kUnreached;
  friend bool operator==(const MaxIdUpdate&, const MaxIdUpdate&) = default;
};

/// Per-source traversal data of one wave: a bubble-trimmed maxId slice and an
/// n-cell fill-mark slice per slot, both living in arena memory.
///
/// Every slot assignment gets a fresh 32-bit stamp, so fill marks left by
/// earlier assignments never need clearing. maxId cells use the shared epoch
/// codec of the wave. Relaxation may run concurrently: maxId cells are
/// lowered with an atomic minimum and fill marks set with an atomic exchange.
class TraversalState {
 public:
  explicit TraversalState(vertex_t n, bool checked = false);

  /// Binds the slots to `sources`. fill_cells holds sources.size() * n cells
  /// and maxid_cells the slices described by offsets (slots + 1 prefix sums).
  void begin_wave(std::span<const vertex_t> sources, std::span<std::uint32_t> fill_cells,
                  std::span<std::uint64_t> maxid_cells, std::span<const std::uint64_t> offsets,
                  const EpochCodec& codec);

  vertex_t n() const noexcept { return n_; }
  bool checked() const noexcept { return checked_; }
  std::size_t slots() const noexcept { return sources_.size(); }
  vertex_t source(slot_t slot) const noexcept { return sources_[slot]; }
  std::uint32_t stamp(slot_t slot) const noexcept { return stamps_[slot]; }
  std::uint64_t epoch_base() const noexcept { return codec_->base(); }

  /// Decoded maxId(v) for the slot's source; requires v < source(slot).
  vertex_t max_id(slot_t slot, vertex_t v) const;
  bool is_stamped(slot_t slot, vertex_t v) const;
  /// Stamps v; true iff this call changed the mark.
  bool try_stamp(slot_t slot, vertex_t v);

  struct MinResult {
    bool updated = false;
    vertex_t previous = kUnreached;
  };
  /// Atomic maxId(v) = min(maxId(v), value).
  MinResult lower_max_id(slot_t slot, vertex_t v, vertex_t value);

  /// Next stamp to hand out; exposed so tests can force a wrap.
  void set_next_stamp(std::uint32_t stamp) noexcept { next_stamp_ = stamp; }
  std::uint64_t stamp_resets() const noexcept { return stamp_resets_; }

 private:
  void check_slot(slot_t slot) const;
  void check_maxid(slot_t slot, vertex_t v) const;
  std::uint64_t& cell(slot_t slot, vertex_t v) const noexcept {
    return maxid_[offsets_[slot] + v];
  }
  std::uint32_t& mark(slot_t slot, vertex_t v) const noexcept {
    return fill_[std::size_t{slot} * n_ + v];
  }

  vertex_t n_;
  bool checked_;
  std::vector<vertex_t> sources_;
  std::vector<std::uint32_t> stamps_;
  std::span<std::uint32_t> fill_;
  std::span<std::uint64_t> maxid_;
  std::vector<std::uint64_t> offsets_;
  const EpochCodec* codec_ = nullptr;
  std::uint32_t next_stamp_ = 1;
  std::uint64_t stamp_resets_ = 0;
};

/// Counters and outputs gathered by one worker thread.
struct WorkerLocal {
  /// Structure entries (vertex, slot) recorded by this worker, both triangles.
  std::vector<FrontierEntry> structure;
  std::vector<MaxIdUpdate> updates;
  /// Frontier insertions per slot.
  std::vector<std::uint64_t> insertions;
  /// Out-edges scanned per slot.
  std::vector<std::uint64_t> slot_edges;
  std::uint64_t traversed_edges = 0;
  std::uint64_t maxid_updates = 0;
  std::uint64_t re_relaxations = 0;

  void reset(std::size_t slots);
  void ensure_slots(std::size_t slots);
};

struct BatchOptions {
  AccessOrder order = AccessOrder::MaxIdFirst;
  int threads = 1;
  bool log_updates = false;
  std::uint32_t iteration = 0;
};

/// Records the out-neighbors of the slot's source, sets maxId = 0 on those
/// below it and returns them as the first frontier.
std::vector<FrontierEntry> init_source(const CsrGraph& g, TraversalState& state, slot_t slot, WorkerLocal& local,
                                       bool log_updates = false);

/// Relaxes frontier -> neighbor with newMaxId = max(maxId(frontier), frontier).
/// Below the source: Updated is a strict decrease of maxId(neighbor); NewFill
/// needs Updated, newMaxId < neighbor and the first stamp; Enqueue needs
/// Updated and no stamp before the call. Above the source: NewFill on the
/// first stamp, maxId untouched, never Enqueue.
RelaxOutcome relax_neighbor(TraversalState& state, slot_t slot, vertex_t frontier, vertex_t neighbor);

/// Same results, but an already stamped neighbor below the source is skipped
/// before its maxId is touched.
RelaxOutcome relax_neighbor_fill_first(TraversalState& state, slot_t slot, vertex_t frontier, vertex_t neighbor);

/// Relaxes every out-edge of every batch entry using up to options.threads
/// threads (locals.size() >= threads). Enqueued entries go to `next`.
void process_batch(const CsrGraph& g, TraversalState& state, std::span<const FrontierEntry> batch,
                   NextFrontier& next, std::span<WorkerLocal> locals, const BatchOptions& options);

void process_batch(const CsrGraph& g, TraversalState& state, const FrontierBatch& batch, NextFrontier& next,
                   std::span<WorkerLocal> locals, const BatchOptions& options);

/// Single-threaded convenience form with an unbounded next batch.
std::vector<FrontierEntry> process_batch(const CsrGraph& g, TraversalState& state,
                                         std::span<const FrontierEntry> batch, WorkerLocal& local,
                                         const BatchOptions& options = {});

/// An unbudgeted arena, codec and state for a fixed set of sources, for
/// driving the traversal primitives directly.
class StandaloneState {
 public:
  StandaloneState(vertex_t n, std::vector<vertex_t> sources, bool checked = false);

  TraversalState& state() noexcept { return state_; }
  const EpochCodec& codec() const noexcept { return codec_; }

 private:
  Arena arena_;
  EpochCodec codec_;
  TraversalState state_;
};

}  // namespace symfill
