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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "symfill/csr_graph.hpp"

namespace symfill {

/// A bijection on [0, n), stored as new index -> old index.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidPermutation unless `new_to_old` is a bijection.
  explicit Permutation(std::vector<vertex_t> new_to_old);

  static Permutation identity(vertex_t n);

  vertex_t size() const noexcept { return static_cast<vertex_t>(perm_.size()); }
  vertex_t operator[](vertex_t new_index) const noexcept { return perm_[new_index]; }
  std::span<const vertex_t> values() const noexcept { return perm_; }

  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<vertex_t> perm_;
};

/// One 0-based integer per line.
Permutation read_permutation(std::istream& in);
Permutation load_permutation(const std::filesystem::path& path);

/// Structure of P_r * A * P_c: entry (i, j) of the result is entry
/// (row_perm[i], col_perm[j]) of `g`. Diagonal flags take part in the
/// permutation, so a diagonal entry can become an off-diagonal edge and
/// vice versa.
///
/// Errors: DimensionError if either permutation length differs from g.n().
CsrGraph apply_permutation(const CsrGraph& g, const Permutation& row_perm,
                           const Permutation& col_perm);

}  // namespace symfill
