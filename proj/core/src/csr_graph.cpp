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

#include "symfill/csr_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace symfill {

CsrGraph::CsrGraph(vertex_t n, std::vector<edge_t> row_ptr, std::vector<vertex_t> col_idx,
                   std::vector<bool> diagonal)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), diagonal_(std::move(diagonal)) {
  if (row_ptr_.size() != static_cast<std::size_t>(n_) + 1) {
    throw DimensionError("row_ptr must have n+1 entries");
  }
  if (diagonal_.size() != n_) {
    throw DimensionError("diagonal flags must have n entries");
  }
  if (row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size()) {
    throw RangeError("row_ptr must start at 0 and end at nnz");
  }
  for (vertex_t v = 0; v < n_; ++v) {
    if (row_ptr_[v] > row_ptr_[v + 1]) throw RangeError("row_ptr must be nondecreasing");
    for (edge_t e = row_ptr_[v]; e < row_ptr_[v + 1]; ++e) {
      const vertex_t w = col_idx_[e];
      if (w >= n_) throw RangeError("column index out of range in row " + std::to_string(v));
      if (w == v) throw RangeError("self edge stored in row " + std::to_string(v));
      if (e > row_ptr_[v] && col_idx_[e - 1] >= w) {
        throw RangeError("row " + std::to_string(v) + " is not strictly increasing");
      }
    }
  }
}

CsrGraph CsrGraph::from_entries(vertex_t n, std::span<const std::pair<vertex_t, vertex_t>> entries) {
  std::vector<bool> diagonal(n, false);
  std::vector<edge_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : entries) {
    if (u >= n || v >= n) throw RangeError("entry outside an n x n pattern");
    if (u != v) ++counts[u + 1];
  }
  for (vertex_t v = 0; v < n; ++v) counts[v + 1] += counts[v];

  std::vector<vertex_t> cols(counts.back());
  std::vector<edge_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : entries) {
    if (u == v) {
      diagonal[u] = true;
    } else {
      cols[cursor[u]++] = v;
    }
  }

  // Sort and dedup each row, compacting in place.
  std::vector<edge_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  edge_t out = 0;
  for (vertex_t v = 0; v < n; ++v) {
    auto first = cols.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = cols.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) cols[out++] = *it;
    row_ptr[v + 1] = out;
  }
  cols.resize(out);

  CsrGraph g;
  g.n_ = n;
  g.row_ptr_ = std::move(row_ptr);
  g.col_idx_ = std::move(cols);
  g.diagonal_ = std::move(diagonal);
  return g;
}

CsrGraph CsrGraph::from_edges_with_diagonal(vertex_t n,
                                            std::span<const std::pair<vertex_t, vertex_t>> edges) {
  CsrGraph g = from_entries(n, edges);
  g.diagonal_.assign(n, true);
  return g;
}

bool CsrGraph::has_edge(vertex_t u, vertex_t v) const noexcept {
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<vertex_t, vertex_t>> CsrGraph::entries_with_diagonal() const {
  std::vector<std::pair<vertex_t, vertex_t>> out;
  out.reserve(nnz() + n_);
  for (vertex_t u = 0; u < n_; ++u) {
    bool placed = !diagonal_[u];
    for (vertex_t v : neighbors(u)) {
      if (!placed && v > u) {
        out.emplace_back(u, u);
        placed = true;
      }
      out.emplace_back(u, v);
    }
    if (!placed) out.emplace_back(u, u);
  }
  return out;
}

CsrGraph transpose_structure(const CsrGraph& g) {
  const vertex_t n = g.n();
  std::vector<edge_t> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  for (vertex_t v : g.col_idx()) ++row_ptr[v + 1];
  for (vertex_t v = 0; v < n; ++v) row_ptr[v + 1] += row_ptr[v];

  // Scanning source rows in increasing order keeps every target row sorted.
  std::vector<vertex_t> cols(g.nnz());
  std::vector<edge_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
  for (vertex_t u = 0; u < n; ++u) {
    for (vertex_t v : g.neighbors(u)) cols[cursor[v]++] = u;
  }
  return CsrGraph(n, std::move(row_ptr), std::move(cols), g.diagonal_flags());
}

void write_csr_text(std::ostream& out, const CsrGraph& g) {
  out << g.n() << ' ' << g.nnz() << '\n';
  const auto rp = g.row_ptr();
  for (std::size_t i = 0; i < rp.size(); ++i) out << (i ? " " : "") << rp[i];
  out << '\n';
  const auto ci = g.col_idx();
  for (std::size_t i = 0; i < ci.size(); ++i) out << (i ? " " : "") << ci[i];
  out << '\n';
}

CsrGraph read_csr_text(std::istream& in) {
  std::uint64_t n = 0;
  std::uint64_t nnz = 0;
  if (!(in >> n >> nnz)) throw ParseError("CSR text: expected 'n nnz' header");
  if (n > 0xFFFFFFFEull) throw RangeError("CSR text: n does not fit a vertex id");
  std::vector<edge_t> row_ptr(n + 1);
  for (auto& x : row_ptr) {
    if (!(in >> x)) throw ParseError("CSR text: truncated row_ptr line");
  }
  std::vector<vertex_t> cols(nnz);
  for (auto& x : cols) {
    std::uint64_t v = 0;
    if (!(in >> v)) throw ParseError("CSR text: truncated col_idx line");
    if (v >= n) throw RangeError("CSR text: column index out of range");
    x = static_cast<vertex_t>(v);
  }
  return CsrGraph(static_cast<vertex_t>(n), std::move(row_ptr), std::move(cols),
                  std::vector<bool>(n, true));
}

}  // namespace symfill
