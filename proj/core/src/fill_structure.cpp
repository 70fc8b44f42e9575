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

#include "symfill/fill_structure.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace symfill {

FillStructure::FillStructure(vertex_t n) : lower_(n), upper_(n), done_(n, 0) {}

void FillStructure::set_row(vertex_t row, std::vector<vertex_t> lower, std::vector<vertex_t> upper) {
  if (row >= n()) throw RangeError("row outside the structure");
  std::sort(lower.begin(), lower.end());
  std::sort(upper.begin(), upper.end());
  if (!lower.empty() && lower.back() >= row) throw RangeError("lower entry on or above the diagonal");
  if (!upper.empty() && (upper.front() <= row || upper.back() >= n())) {
    throw RangeError("upper entry on or below the diagonal");
  }
  if (std::adjacent_find(lower.begin(), lower.end()) != lower.end() ||
      std::adjacent_find(upper.begin(), upper.end()) != upper.end()) {
    throw RangeError("duplicate structure entry in row " + std::to_string(row));
  }
  lower_[row] = std::move(lower);
  upper_[row] = std::move(upper);
  done_[row] = 1;
}

bool FillStructure::complete() const noexcept { return rows_complete(0, n()); }

bool FillStructure::rows_complete(vertex_t begin, vertex_t end) const noexcept {
  return std::all_of(done_.begin() + begin, done_.begin() + end, [](std::uint8_t d) { return d != 0; });
}

std::vector<std::size_t> FillStructure::upper_counts() const {
  std::vector<std::size_t> out(n());
  for (vertex_t i = 0; i < n(); ++i) out[i] = upper_[i].size();
  return out;
}

bool FillStructure::has_lower(vertex_t s, vertex_t r) const noexcept {
  const auto& row = lower_[s];
  return std::binary_search(row.begin(), row.end(), r);
}

bool FillStructure::contains(vertex_t i, vertex_t j) const noexcept {
  if (j < i) return has_lower(i, j);
  if (j == i) return true;
  return std::binary_search(upper_[i].begin(), upper_[i].end(), j);
}

edge_t FillStructure::nnz() const noexcept {
  edge_t total = 0;
  for (vertex_t i = 0; i < n(); ++i) total += lower_[i].size() + upper_[i].size();
  return total;
}

std::vector<std::pair<vertex_t, vertex_t>> fill_entries(const FillStructure& fs, const CsrGraph& g) {
  std::vector<std::pair<vertex_t, vertex_t>> out;
  for (vertex_t i = 0; i < fs.n(); ++i) {
    for (auto part : {fs.lower(i), fs.upper(i)}) {
      for (vertex_t j : part) {
        if (!g.has_edge(i, j)) out.emplace_back(i, j);
      }
    }
  }
  return out;
}

edge_t fill_count(const FillStructure& fs, const CsrGraph& g) { return fill_entries(fs, g).size(); }

CsrGraph to_graph(const FillStructure& fs) {
  std::vector<edge_t> row_ptr(static_cast<std::size_t>(fs.n()) + 1, 0);
  std::vector<vertex_t> cols;
  cols.reserve(fs.nnz());
  for (vertex_t i = 0; i < fs.n(); ++i) {
    cols.insert(cols.end(), fs.lower(i).begin(), fs.lower(i).end());
    cols.insert(cols.end(), fs.upper(i).begin(), fs.upper(i).end());
    row_ptr[i + 1] = cols.size();
  }
  return CsrGraph(fs.n(), std::move(row_ptr), std::move(cols), std::vector<bool>(fs.n(), true));
}

void write_structure_text(std::ostream& out, const FillStructure& fs) { write_csr_text(out, to_graph(fs)); }

FillStructure read_structure_text(std::istream& in) {
  const CsrGraph g = read_csr_text(in);
  FillStructure fs(g.n());
  for (vertex_t i = 0; i < g.n(); ++i) {
    const auto row = g.neighbors(i);
    const auto split = std::lower_bound(row.begin(), row.end(), i);
    fs.set_row(i, std::vector<vertex_t>(row.begin(), split), std::vector<vertex_t>(split, row.end()));
  }
  return fs;
}

std::vector<RowDiff> compare_structures(const FillStructure& expected, const FillStructure& actual) {
  if (expected.n() != actual.n()) throw DimensionError("structures have different orders");
  std::vector<RowDiff> diffs;
  std::vector<vertex_t> a, b;
  for (vertex_t i = 0; i < expected.n(); ++i) {
    a.assign(expected.lower(i).begin(), expected.lower(i).end());
    a.insert(a.end(), expected.upper(i).begin(), expected.upper(i).end());
    b.assign(actual.lower(i).begin(), actual.lower(i).end());
    b.insert(b.end(), actual.upper(i).begin(), actual.upper(i).end());
    if (a == b && expected.has_row(i) == actual.has_row(i)) continue;
    RowDiff d;
    d.row = i;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.missing));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.extra));
    diffs.push_back(std::move(d));
  }
  return diffs;
}

std::string describe(const std::vector<RowDiff>& diffs, std::size_t max_rows) {
  std::ostringstream out;
  auto list = [&out](const std::vector<vertex_t>& v) {
    out << '{';
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
    out << '}';
  };
  for (std::size_t k = 0; k < diffs.size() && k < max_rows; ++k) {
    out << "row " << diffs[k].row << ": missing ";
    list(diffs[k].missing);
    out << " extra ";
    list(diffs[k].extra);
    out << '\n';
  }
  if (diffs.size() > max_rows) out << "... " << diffs.size() - max_rows << " more rows differ\n";
  return out.str();
}

}  // namespace symfill
