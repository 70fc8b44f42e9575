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
#include <limits>
#include <span>
#include <vector>

#include "symfill/types.hpp"

namespace symfill {

/// Decoded value of a maxId cell that holds no path yet.
inline constexpr vertex_t kUnreached = std::numeric_limits<vertex_t>::max();

/// Value-range partitioning for reusable maxId cells.
///
/// The physical range [0, max_value] is cut into windows of n values. The
/// current epoch owns [base - n, base): logical value m is stored as
/// base - n + m, and any cell >= base (older epochs, or the max_value
/// sentinel) decodes as unreached. Each advance moves the window down by n,
/// so a reused array needs no clearing until the windows run out; then the
/// caller rewrites every cell to sentinel() and the base returns to
/// max_value. Because every live encoding sits below every stale one, an
/// unsigned minimum on raw cells is a minimum on decoded values.
class EpochCodec {
 public:
  /// Throws InvalidConfig if max_value < n (not even one window fits).
  explicit EpochCodec(vertex_t n, std::uint64_t max_value = std::numeric_limits<std::uint64_t>::max());

  std::uint64_t sentinel() const noexcept { return max_value_; }
  std::uint64_t base() const noexcept { return base_; }
  std::uint64_t width() const noexcept { return n_; }

  std::uint64_t encode(vertex_t value) const noexcept { return base_ - n_ + value; }
  vertex_t decode(std::uint64_t cell) const noexcept {
    return cell >= base_ ? kUnreached : static_cast<vertex_t>(cell - (base_ - n_));
  }
  /// False for a cell below the current window, which no correct history produces.
  bool plausible(std::uint64_t cell) const noexcept { return cell >= base_ - n_; }

  /// Opens the next window. Returns true when the range was exhausted and the
  /// base was reset, in which case every cell must be rewritten to sentinel().
  bool advance() noexcept;

  std::uint64_t windows_per_initialization() const noexcept { return max_value_ / n_; }
  std::uint64_t reinitializations() const noexcept { return reinitializations_; }

 private:
  std::uint64_t n_;
  std::uint64_t max_value_;
  std::uint64_t base_;
  std::uint64_t reinitializations_ = 0;
};

/// A single reusable maxId array with epoch-based lazy reinitialization, as
/// one slot sees it across consecutive source assignments.
class MaxIdArray {
 public:
  MaxIdArray(vertex_t n, std::uint64_t max_value = std::numeric_limits<std::uint64_t>::max());

  vertex_t size() const noexcept { return static_cast<vertex_t>(cells_.size()); }
  vertex_t get(vertex_t v) const noexcept { return codec_.decode(cells_[v]); }
  /// Stores min(current, value); true iff the decoded value decreased.
  bool lower_to(vertex_t v, vertex_t value) noexcept;

  /// Prepares the array for the next source; returns the new base.
  std::uint64_t epoch_advance();

  const EpochCodec& codec() const noexcept { return codec_; }
  std::uint64_t physical_reinitializations() const noexcept { return codec_.reinitializations(); }
  std::span<const std::uint64_t> raw() const noexcept { return cells_; }

 private:
  EpochCodec codec_;
  std::vector<std::uint64_t> cells_;
};

}  // namespace symfill
