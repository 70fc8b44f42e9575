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
#include <vector>

#include "symfill/engine.hpp"
#include "symfill/supernode.hpp"

namespace symfill {

/// How the sources of a round are dealt to the workers of a node.
enum class Assignment {
  /// Source k of the round goes to worker k mod workers.
  Interleaved,
  /// Each worker takes one contiguous block of the round.
  Blocked,
};

struct SourceAssignment {
  std::size_t node = 0;
  std::size_t worker = 0;
  std::size_t round = 0;
  friend bool operator==(const SourceAssignment&, const SourceAssignment&) = default;
};

/// The chunks a node holds at once and how their sources are dealt out.
struct ScheduleRound {
  std::vector<std::size_t> chunks;
  std::vector<std::vector<vertex_t>> worker_sources;
};

/// Chunk k covers rows [k * chunk_size, min(n, (k + 1) * chunk_size)) and
/// lives on node k mod nodes. A node works through its chunks in rounds of
/// concurrent_chunks_per_node, chosen so that
///   chunk_size * concurrent_chunks_per_node >= concurrent_per_worker * workers_per_node
/// with the smallest such count.
struct SchedulePlan {
  vertex_t n = 0;
  std::size_t chunk_size = 0;
  std::size_t workers_per_node = 0;
  std::size_t nodes = 0;
  std::size_t concurrent_per_worker = 0;
  std::size_t concurrent_chunks_per_node = 0;
  Assignment assignment = Assignment::Interleaved;
  std::vector<std::vector<ScheduleRound>> node_rounds;
  /// Indexed by source row.
  std::vector<SourceAssignment> sources;

  std::size_t num_chunks() const noexcept { return chunk_size == 0 ? 0 : (n + chunk_size - 1) / chunk_size; }
  RowRange chunk(std::size_t k) const noexcept;
  std::size_t node_of_chunk(std::size_t k) const noexcept { return k % nodes; }
};

/// ceil(concurrent_per_worker * workers / chunk_size), at least 1.
std::size_t concurrent_chunks_per_node(std::size_t chunk_size, std::size_t concurrent_per_worker,
                                       std::size_t workers_per_node);

/// Throws InvalidConfig if any count is zero.
SchedulePlan plan_chunks(vertex_t n, std::size_t chunk_size, std::size_t workers_per_node, std::size_t nodes,
                         std::size_t concurrent_per_worker, Assignment assignment = Assignment::Interleaved);

struct PipelineConfig {
  /// Per-worker engine settings; concurrency is taken from the plan.
  EngineConfig engine;
  std::size_t max_supernode = kDefaultSupernodeSize;
};

struct PipelineResult {
  FillStructure structure;
  SupernodePartition supernodes;
  EngineStats stats;
  /// Traversed edges per (node, worker), index node * workers_per_node + worker.
  std::vector<std::uint64_t> per_worker_edges;
  /// Slowest node's time in fill detection and in supernode detection.
  double fill_seconds = 0;
  double supernode_seconds = 0;
  double wall_seconds = 0;
};

/// Runs every node as its own group of threads. Within a node, each round's
/// workers run the engine on their sources in parallel; once they finish,
/// the round's chunks go through supernode detection on that node.
PipelineResult run_pipeline(const CsrGraph& g, const SchedulePlan& plan, const PipelineConfig& config);

struct BalanceReport {
  std::vector<std::uint64_t> per_worker_edges;
  /// Largest over smallest per-worker edge count; 1 when all are equal.
  double max_min_ratio = 1;
  std::uint64_t traversed_edges = 0;
  double fill_seconds = 0;
  double teps = 0;
  /// Frontier insertions per source, ordered by source.
  std::vector<SourceProfile> profile;
};

BalanceReport balance_report(const PipelineResult& result);

}  // namespace symfill
