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

/// Contiguous supernode blocks covering the row range [begin, end). Block k
/// spans [leaders[k], leaders[k+1]) with the last block ending at `end`.
class SupernodePartition {
 public:
  SupernodePartition() = default;
  /// Throws RangeError unless leaders start at `begin`, increase strictly and
  /// stay below `end` (an empty range has no leaders).
  SupernodePartition(vertex_t begin, vertex_t end, std::vector<vertex_t> leaders);

  vertex_t begin() const noexcept { return begin_; }
  vertex_t end() const noexcept { return end_; }
  std::span<const vertex_t> leaders() const noexcept { return leaders_; }
  std::size_t size() const noexcept { return leaders_.size(); }
  std::pair<vertex_t, vertex_t> block(std::size_t k) const noexcept;
  std::size_t max_block_size() const noexcept;

  /// Concatenates a partition of the adjacent range [end(), other.end()).
  void append(const SupernodePartition& other);

  friend bool operator==(const SupernodePartition&, const SupernodePartition&) = default;

 private:
  vertex_t begin_ = 0;
  vertex_t end_ = 0;
  std::vector<vertex_t> leaders_;
};

/// Newline-separated leading rows.
void write_supernodes(std::ostream& out, const SupernodePartition& p);
SupernodePartition read_supernodes(std::istream& in, vertex_t n);

}  // namespace symfill
