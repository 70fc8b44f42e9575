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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "symfill/arena.hpp"
#include "symfill/csr_graph.hpp"
#include "symfill/fill_structure.hpp"
#include "symfill/traversal.hpp"

namespace symfill {

struct EngineConfig {
  /// Concurrent sources (#C).
  std::size_t concurrency = 1;
  /// Threads relaxing each batch.
  int threads = 1;
  AccessOrder order = AccessOrder::MaxIdFirst;
  /// Bounds checks on every slot access plus audits of every maxId update,
  /// the fill marks and spill conservation; failures raise InvariantViolation.
  bool checked = false;
  /// Keep an IterationTrace per iteration.
  bool record_trace = false;
  /// Arena budget in bytes; 0 means unbounded.
  std::uint64_t budget_bytes = 0;
  /// Minimum frontier capacity per batch, per thread.
  std::size_t frontier_floor = kDefaultFrontierFloor;
  /// Prefix for file-backed spill stores; empty keeps spills in memory.
  std::string spill_path;
  /// Top of the maxId value range used by the epoch codec.
  std::uint64_t max_value = std::numeric_limits<std::uint64_t>::max();
};

struct SourceProfile {
  vertex_t source = 0;
  /// Frontier entries enqueued for this source over its whole run.
  std::uint64_t insertions = 0;
  std::uint64_t traversed_edges = 0;
};

struct EngineStats {
  std::uint64_t traversed_edges = 0;
  std::uint64_t iterations = 0;
  std::uint64_t maxid_updates = 0;
  std::uint64_t re_relaxations = 0;
  std::uint64_t structure_entries = 0;
  std::uint64_t frontier_insertions = 0;
  std::uint64_t spill_events = 0;
  std::uint64_t entries_spilled = 0;
  std::uint64_t entries_reloaded = 0;
  /// Multiset digests of spilled and reloaded entries; equal when nothing was
  /// lost or duplicated.
  std::uint64_t spilled_digest = 0;
  std::uint64_t reloaded_digest = 0;
  std::uint64_t waves = 0;
  std::uint64_t epoch_reinitializations = 0;
  std::uint64_t stamp_resets = 0;
  /// Smallest wave concurrency the budget allowed; a final wave that is short
  /// only because sources ran out does not count. 0 before any wave.
  std::size_t effective_concurrency = 0;
  std::size_t high_water_mark = 0;
  /// Largest resident frontier batch seen.
  std::size_t peak_frontier = 0;
  double seconds = 0;
  std::vector<SourceProfile> profile;

  void merge(const EngineStats& other);
};

struct IterationTrace {
  std::uint64_t wave = 0;
  std::uint32_t iteration = 0;
  std::vector<vertex_t> sources;
  /// Entries processed in this iteration, resident and reloaded.
  std::vector<FrontierEntry> frontier;
  std::vector<MaxIdUpdate> updates;
  /// Structure entries recorded in this iteration (vertex, slot).
  std::vector<FrontierEntry> recorded;
  /// Decoded maxId of every slot after the iteration; kUnreached if none.
  std::vector<std::vector<vertex_t>> max_id;
};

/// Checks that the logged updates of every (slot, vertex) form one chain of
/// strict decreases starting from unreached. Throws InvariantViolation.
void audit_updates(std::span<const MaxIdUpdate> updates);

/// Multi-source fill detection. Sources are taken in order, in waves of up
/// to `concurrency` slots (fewer when the budget requires it); each wave
/// iterates until both its resident frontier and spill store are empty.
class MultiSourceEngine {
 public:
  MultiSourceEngine(const CsrGraph& g, EngineConfig config);

  /// Computes the rows of `sources` into `out` (which must have g.n() rows).
  EngineStats run(std::span<const vertex_t> sources, FillStructure& out);

  const std::vector<IterationTrace>& trace() const noexcept { return trace_; }
  const EngineConfig& config() const noexcept { return config_; }

 private:
  const CsrGraph& g_;
  EngineConfig config_;
  std::vector<IterationTrace> trace_;
};

/// Runs all `sources` and returns a structure holding just their rows.
FillStructure run_multi_source(const CsrGraph& g, std::span<const vertex_t> sources, const EngineConfig& config,
                               EngineStats* stats = nullptr);
/// Every row of g.
FillStructure run_multi_source(const CsrGraph& g, const EngineConfig& config, EngineStats* stats = nullptr);

}  // namespace symfill
