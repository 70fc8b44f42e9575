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

#include "symfill/partition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace symfill {

SupernodePartition::SupernodePartition(vertex_t begin, vertex_t end, std::vector<vertex_t> leaders)
    : begin_(begin), end_(end), leaders_(std::move(leaders)) {
  if (end_ < begin_) throw RangeError("partition range is reversed");
  if (begin_ == end_) {
    if (!leaders_.empty()) throw RangeError("empty range cannot have leaders");
    return;
  }
  if (leaders_.empty() || leaders_.front() != begin_) throw RangeError("first leader must be the first row");
  for (std::size_t k = 1; k < leaders_.size(); ++k) {
    if (leaders_[k] <= leaders_[k - 1]) throw RangeError("leaders must increase strictly");
  }
  if (leaders_.back() >= end_) throw RangeError("leader outside the partition range");
}

std::pair<vertex_t, vertex_t> SupernodePartition::block(std::size_t k) const noexcept {
  const vertex_t last = k + 1 < leaders_.size() ? leaders_[k + 1] : end_;
  return {leaders_[k], last};
}

std::size_t SupernodePartition::max_block_size() const noexcept {
  std::size_t best = 0;
  for (std::size_t k = 0; k < size(); ++k) {
    const auto [b, e] = block(k);
    best = std::max<std::size_t>(best, e - b);
  }
  return best;
}

void SupernodePartition::append(const SupernodePartition& other) {
  if (other.begin_ != end_) throw RangeError("appended partition is not adjacent");
  leaders_.insert(leaders_.end(), other.leaders_.begin(), other.leaders_.end());
  end_ = other.end_;
}

void write_supernodes(std::ostream& out, const SupernodePartition& p) {
  for (vertex_t r : p.leaders()) out << r << '\n';
}

SupernodePartition read_supernodes(std::istream& in, vertex_t n) {
  std::vector<vertex_t> leaders;
  long long v = 0;
  while (in >> v) {
    if (v < 0) throw ParseError("negative supernode leader");
    leaders.push_back(static_cast<vertex_t>(v));
  }
  if (!in.eof()) throw ParseError("malformed supernode file");
  return SupernodePartition(0, n, std::move(leaders));
}

}  // namespace symfill
