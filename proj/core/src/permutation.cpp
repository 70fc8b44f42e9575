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

#include "symfill/permutation.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace symfill {

Permutation::Permutation(std::vector<vertex_t> new_to_old) : perm_(std::move(new_to_old)) {
  std::vector<bool> hit(perm_.size(), false);
  for (vertex_t old : perm_) {
    if (old >= perm_.size() || hit[old]) {
      throw InvalidPermutation("permutation is not a bijection on [0, " + std::to_string(perm_.size()) + ")");
    }
    hit[old] = true;
  }
}

Permutation Permutation::identity(vertex_t n) {
  std::vector<vertex_t> p(n);
  for (vertex_t i = 0; i < n; ++i) p[i] = i;
  return Permutation(std::move(p));
}

Permutation Permutation::inverse() const {
  std::vector<vertex_t> inv(perm_.size());
  for (vertex_t i = 0; i < size(); ++i) inv[perm_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation read_permutation(std::istream& in) {
  std::vector<vertex_t> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    long long v = 0;
    std::string rest;
    if (!(ss >> v) || (ss >> rest)) throw ParseError("permutation line must hold one integer: '" + line + "'");
    if (v < 0) throw InvalidPermutation("negative permutation entry");
    values.push_back(static_cast<vertex_t>(v));
  }
  return Permutation(std::move(values));
}

Permutation load_permutation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_permutation(in);
}

CsrGraph apply_permutation(const CsrGraph& g, const Permutation& row_perm, const Permutation& col_perm) {
  if (row_perm.size() != g.n() || col_perm.size() != g.n()) {
    throw DimensionError("permutation length does not match matrix order");
  }
  const Permutation row_inv = row_perm.inverse();
  const Permutation col_inv = col_perm.inverse();
  auto entries = g.entries_with_diagonal();
  for (auto& [u, v] : entries) {
    u = row_inv[u];
    v = col_inv[v];
  }
  return CsrGraph::from_entries(g.n(), entries);
}

}  // namespace symfill
