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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symfill/csr_graph.hpp"

namespace symfill {

/// Nonzero structure of the factors: for every row i, the sorted columns
/// j < i of L and j > i of U. The diagonal is implicit.
///
/// Rows are filled independently (set_row); distinct rows may be written
/// concurrently. A row that was never set reads as empty and reports
/// has_row() == false.
class FillStructure {
 public:
  FillStructure() = default;
  explicit FillStructure(vertex_t n);

  vertex_t n() const noexcept { return static_cast<vertex_t>(lower_.size()); }

  /// Sorts both parts. Throws RangeError if a lower column is >= row or an
  /// upper column is <= row or >= n.
  void set_row(vertex_t row, std::vector<vertex_t> lower, std::vector<vertex_t> upper);

  bool has_row(vertex_t row) const noexcept { return done_[row] != 0; }
  bool complete() const noexcept;
  bool rows_complete(vertex_t begin, vertex_t end) const noexcept;

  std::span<const vertex_t> lower(vertex_t row) const noexcept { return lower_[row]; }
  std::span<const vertex_t> upper(vertex_t row) const noexcept { return upper_[row]; }
  std::size_t nnz_upper(vertex_t row) const noexcept { return upper_[row].size(); }
  std::vector<std::size_t> upper_counts() const;

  /// L(s, r) != 0, by binary search over row s.
  bool has_lower(vertex_t s, vertex_t r) const noexcept;
  bool contains(vertex_t i, vertex_t j) const noexcept;

  /// Off-diagonal entries of L + U.
  edge_t nnz() const noexcept;

  friend bool operator==(const FillStructure&, const FillStructure&) = default;

 private:
  std::vector<std::vector<vertex_t>> lower_;
  std::vector<std::vector<vertex_t>> upper_;
  std::vector<std::uint8_t> done_;
};

/// Entries of `fs` that are not edges of `g`: the fill-ins, row-major.
std::vector<std::pair<vertex_t, vertex_t>> fill_entries(const FillStructure& fs, const CsrGraph& g);
edge_t fill_count(const FillStructure& fs, const CsrGraph& g);

/// The L+U pattern as a CsrGraph (diagonal flags all set).
CsrGraph to_graph(const FillStructure& fs);

/// CSR text of L+U (same layout as write_csr_text).
void write_structure_text(std::ostream& out, const FillStructure& fs);
FillStructure read_structure_text(std::istream& in);

struct RowDiff {
  vertex_t row = 0;
  std::vector<vertex_t> missing;  // in expected, absent from actual
  std::vector<vertex_t> extra;    // in actual, absent from expected
};

/// Per-row set comparison. An empty result means the structures agree.
std::vector<RowDiff> compare_structures(const FillStructure& expected, const FillStructure& actual);
std::string describe(const std::vector<RowDiff>& diffs, std::size_t max_rows = 16);

}  // namespace symfill
