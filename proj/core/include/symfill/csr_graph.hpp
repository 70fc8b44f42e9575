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

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "symfill/types.hpp"

namespace symfill {

/// Adjacency structure of G(A) in compressed sparse row form.
///
/// Row i lists the out-neighbors of vertex i (the off-diagonal nonzero
/// columns of row i), strictly increasing. Self edges are never stored;
/// whether the matrix had an explicit diagonal entry is kept as a flag per
/// row. Instances are immutable once built and safe to share across threads.
class CsrGraph {
 public:
  CsrGraph() = default;

  /// Validating constructor. Throws RangeError / ParseError when the arrays
  /// violate the CSR invariants (offsets, bounds, sortedness, self edges).
  CsrGraph(vertex_t n, std::vector<edge_t> row_ptr, std::vector<vertex_t> col_idx,
           std::vector<bool> diagonal);

  /// Builds from an arbitrary (unsorted, possibly duplicated) entry list.
  /// Diagonal entries become flags; duplicates are merged.
  static CsrGraph from_entries(vertex_t n, std::span<const std::pair<vertex_t, vertex_t>> entries);

  /// Same as from_entries, then marks every diagonal as present.
  static CsrGraph from_edges_with_diagonal(vertex_t n,
                                           std::span<const std::pair<vertex_t, vertex_t>> edges);

  vertex_t n() const noexcept { return n_; }
  edge_t nnz() const noexcept { return col_idx_.size(); }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {col_idx_.data() + row_ptr_[v], col_idx_.data() + row_ptr_[v + 1]};
  }
  std::size_t degree(vertex_t v) const noexcept { return row_ptr_[v + 1] - row_ptr_[v]; }
  bool has_edge(vertex_t u, vertex_t v) const noexcept;
  bool has_diagonal(vertex_t v) const noexcept { return diagonal_[v]; }

  std::span<const edge_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const vertex_t> col_idx() const noexcept { return col_idx_; }
  const std::vector<bool>& diagonal_flags() const noexcept { return diagonal_; }

  /// All stored entries including present diagonals, row-major.
  std::vector<std::pair<vertex_t, vertex_t>> entries_with_diagonal() const;

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  vertex_t n_ = 0;
  std::vector<edge_t> row_ptr_{0};
  std::vector<vertex_t> col_idx_;
  std::vector<bool> diagonal_;
};

/// Structure of the transpose: (u,v) present iff (v,u) present in `g`.
CsrGraph transpose_structure(const CsrGraph& g);

// Textual CSR: "n nnz" header line, then the row_ptr line, then the col_idx
// line. Diagonal flags are not part of the format; read_csr_text marks every
// diagonal present.
void write_csr_text(std::ostream& out, const CsrGraph& g);
CsrGraph read_csr_text(std::istream& in);

}  // namespace symfill
