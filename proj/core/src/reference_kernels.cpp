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

#include "symfill/reference_kernels.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>

namespace symfill {
namespace {

constexpr vertex_t kNoMark = std::numeric_limits<vertex_t>::max();

void record(vertex_t src, vertex_t w, RowStructure& row) {
  (w < src ? row.lower : row.upper).push_back(w);
}

}  // namespace

FillStructure fill1_all(const CsrGraph& g) {
  const vertex_t n = g.n();
  FillStructure fs(n);
  std::vector<vertex_t> mark(n, kNoMark);
  std::vector<vertex_t> frontier, next;
  for (vertex_t src = 0; src < n; ++src) {
    RowStructure row;
    frontier.clear();
    mark[src] = src;
    for (vertex_t w : g.neighbors(src)) {
      mark[w] = src;
      record(src, w, row);
      if (w < src) frontier.push_back(w);
    }
    while (!frontier.empty()) {
      next.clear();
      for (vertex_t f : frontier) {
        for (vertex_t w : fs.upper(f)) {
          if (mark[w] == src) continue;
          mark[w] = src;
          record(src, w, row);
          if (w < src) next.push_back(w);
        }
      }
      frontier.swap(next);
    }
    fs.set_row(src, std::move(row.lower), std::move(row.upper));
  }
  return fs;
}

RowStructure fill2_row(const CsrGraph& g, vertex_t src) {
  if (src >= g.n()) throw RangeError("source outside the graph");
  RowStructure row;
  std::vector<bool> visited(g.n(), false);
  std::priority_queue<vertex_t, std::vector<vertex_t>, std::greater<>> thresholds;
  visited[src] = true;
  for (vertex_t w : g.neighbors(src)) {
    visited[w] = true;
    record(src, w, row);
    if (w < src) thresholds.push(w);
  }
  std::vector<vertex_t> stack;
  while (!thresholds.empty()) {
    const vertex_t t = thresholds.top();
    thresholds.pop();
    // Everything reached from here has path maximum t.
    stack.assign(1, t);
    while (!stack.empty()) {
      const vertex_t f = stack.back();
      stack.pop_back();
      for (vertex_t w : g.neighbors(f)) {
        if (visited[w]) continue;
        visited[w] = true;
        if (w < t) {
          stack.push_back(w);
        } else {
          record(src, w, row);
          if (w < src) thresholds.push(w);
        }
      }
    }
  }
  std::sort(row.lower.begin(), row.lower.end());
  std::sort(row.upper.begin(), row.upper.end());
  return row;
}

FillStructure fill2_all(const CsrGraph& g) {
  FillStructure fs(g.n());
  for (vertex_t src = 0; src < g.n(); ++src) {
    RowStructure row = fill2_row(g, src);
    fs.set_row(src, std::move(row.lower), std::move(row.upper));
  }
  return fs;
}

FillStructure brute_force_fills(const CsrGraph& g, vertex_t guard) {
  const vertex_t n = g.n();
  if (n > guard) {
    throw GuardExceeded("brute-force oracle limited to n <= " + std::to_string(guard) + ", got " +
                        std::to_string(n));
  }
  FillStructure fs(n);
  std::vector<vertex_t> seen(n, kNoMark);
  std::vector<vertex_t> stack;
  vertex_t stamp = 0;

  // Marks every vertex reachable from `from` whose intermediates are all
  // below `bound`; returns early once `target` is reached.
  auto search = [&](vertex_t from, vertex_t bound, vertex_t target) {
    ++stamp;
    seen[from] = stamp;
    stack.assign(1, from);
    while (!stack.empty()) {
      const vertex_t x = stack.back();
      stack.pop_back();
      for (vertex_t y : g.neighbors(x)) {
        if (seen[y] == stamp) continue;
        seen[y] = stamp;
        if (y == target) return true;
        if (y < bound) stack.push_back(y);
      }
    }
    return false;
  };

  for (vertex_t i = 0; i < n; ++i) {
    std::vector<vertex_t> lower, upper;
    search(i, i, kNoMark);
    std::vector<bool> reached(n, false);
    for (vertex_t v = 0; v < n; ++v) reached[v] = v != i && seen[v] == stamp;
    for (vertex_t j = i + 1; j < n; ++j) {
      if (reached[j]) upper.push_back(j);
    }
    for (vertex_t j = 0; j < i; ++j) {
      // Intermediates below j imply intermediates below i, so j must have
      // been reached by the wider search.
      if (reached[j] && search(i, j, j)) lower.push_back(j);
    }
    fs.set_row(i, std::move(lower), std::move(upper));
  }
  return fs;
}

SupernodePartition sequential_supernodes(const FillStructure& fs, std::size_t max_size, std::size_t chunk_size) {
  if (max_size == 0) throw InvalidConfig("maximum supernode size must be at least 1");
  if (!fs.complete()) throw MissingRows("supernode scan needs every row of the structure");
  const vertex_t n = fs.n();
  std::vector<vertex_t> leaders;
  if (n == 0) return {};
  vertex_t r = 0;
  leaders.push_back(0);
  for (vertex_t s = 1; s < n; ++s) {
    const bool chunk_break = chunk_size != 0 && s % chunk_size == 0;
    const bool joins = !chunk_break && s - r < max_size && fs.nnz_upper(s) + 1 == fs.nnz_upper(s - 1) &&
                       fs.has_lower(s, r);
    if (!joins) {
      r = s;
      leaders.push_back(s);
    }
  }
  return SupernodePartition(0, n, std::move(leaders));
}

}  // namespace symfill
