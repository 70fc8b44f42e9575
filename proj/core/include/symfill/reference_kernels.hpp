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
#include <vector>

#include "symfill/csr_graph.hpp"
#include "symfill/fill_structure.hpp"
#include "symfill/partition.hpp"

// Sequential reference algorithms. They are deliberately simple and serve as
// the correctness oracles for the multi-source engine.

namespace symfill {

inline constexpr vertex_t kBruteForceGuard = 4096;

struct RowStructure {
  std::vector<vertex_t> lower;
  std::vector<vertex_t> upper;
  friend bool operator==(const RowStructure&, const RowStructure&) = default;
};

/// Row-by-row traversal of the partially filled upper structure. Row src
/// starts from its own edges and expands each reached vertex f < src through
/// U(f, :), which is already complete because rows are processed in order.
FillStructure fill1_all(const CsrGraph& g);

/// Threshold traversal of the original graph for one row. Reached vertices
/// below src are taken as thresholds in increasing order; each threshold
/// exhausts the unvisited smaller vertices it reaches before the next one is
/// taken.
RowStructure fill2_row(const CsrGraph& g, vertex_t src);
FillStructure fill2_all(const CsrGraph& g);

/// Definition-level oracle: (i, j) is in the structure iff (i, j) is an edge
/// or j is reachable from i through intermediates all below min(i, j). Runs
/// one restricted search per (i, bound) pair. Throws GuardExceeded when
/// g.n() > guard.
FillStructure brute_force_fills(const CsrGraph& g, vertex_t guard = kBruteForceGuard);

/// Left-to-right greedy T3 scan. Row s joins the block led by r iff
/// nnz(U(s,:)) == nnz(U(s-1,:)) - 1, L(s, r) != 0 and the block holds fewer
/// than max_size rows. A nonzero chunk_size additionally forces a new block
/// at every multiple of chunk_size.
///
/// Errors: InvalidConfig if max_size == 0; MissingRows if `fs` is incomplete.
SupernodePartition sequential_supernodes(const FillStructure& fs, std::size_t max_size,
                                         std::size_t chunk_size = 0);

}  // namespace symfill
