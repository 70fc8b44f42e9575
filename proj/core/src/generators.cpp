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

#include "symfill/generators.hpp"

#include <random>
#include <utility>
#include <vector>

namespace symfill {

CsrGraph random_pattern(vertex_t n, double density, std::uint64_t seed) {
  if (density < 0 || density > 1) throw InvalidConfig("density must be within [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<vertex_t, vertex_t>> entries;
  for (vertex_t i = 0; i < n; ++i) {
    for (vertex_t j = 0; j < n; ++j) {
      if (i != j && coin(rng)) entries.emplace_back(i, j);
    }
  }
  return CsrGraph::from_edges_with_diagonal(n, entries);
}

CsrGraph random_degree_pattern(vertex_t n, double degree, std::uint64_t seed) {
  if (degree < 0) throw InvalidConfig("degree must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<vertex_t, vertex_t>> entries;
  if (n < 2) return CsrGraph::from_edges_with_diagonal(n, entries);
  std::poisson_distribution<int> count(degree);
  std::uniform_int_distribution<vertex_t> column(0, n - 1);
  for (vertex_t i = 0; i < n; ++i) {
    const int k = count(rng);
    for (int t = 0; t < k; ++t) {
      const vertex_t j = column(rng);
      if (j != i) entries.emplace_back(i, j);
    }
  }
  return CsrGraph::from_edges_with_diagonal(n, entries);
}

CsrGraph skewed_pattern(vertex_t n, vertex_t band, double upper_density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(upper_density);
  std::vector<std::pair<vertex_t, vertex_t>> entries;
  for (vertex_t i = 0; i < n; ++i) {
    for (vertex_t d = 1; d <= band && d <= i; ++d) entries.emplace_back(i, i - d);
    for (vertex_t j = i + 1; j < n; ++j) {
      if (coin(rng)) entries.emplace_back(i, j);
    }
  }
  return CsrGraph::from_edges_with_diagonal(n, entries);
}

}  // namespace symfill
