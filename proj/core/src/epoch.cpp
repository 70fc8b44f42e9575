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

#include "symfill/epoch.hpp"

#include <algorithm>
#include <string>

namespace symfill {

EpochCodec::EpochCodec(vertex_t n, std::uint64_t max_value)
    : n_(std::max<std::uint64_t>(n, 1)), max_value_(max_value), base_(max_value) {
  if (max_value_ < n_) {
    throw InvalidConfig("maxId value range " + std::to_string(max_value_) + " cannot hold " +
                        std::to_string(n_) + " vertices");
  }
}

bool EpochCodec::advance() noexcept {
  const std::uint64_t next = base_ - n_;
  if (next < n_) {
    base_ = max_value_;
    ++reinitializations_;
    return true;
  }
  base_ = next;
  return false;
}

MaxIdArray::MaxIdArray(vertex_t n, std::uint64_t max_value) : codec_(n, max_value), cells_(n, max_value) {}

bool MaxIdArray::lower_to(vertex_t v, vertex_t value) noexcept {
  const std::uint64_t encoded = codec_.encode(value);
  if (encoded >= cells_[v]) return false;
  cells_[v] = encoded;
  return true;
}

std::uint64_t MaxIdArray::epoch_advance() {
  if (codec_.advance()) std::fill(cells_.begin(), cells_.end(), codec_.sentinel());
  return codec_.base();
}

}  // namespace symfill
