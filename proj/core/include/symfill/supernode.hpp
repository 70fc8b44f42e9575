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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "symfill/fill_structure.hpp"
#include "symfill/partition.hpp"

namespace symfill {

inline constexpr std::size_t kDefaultSupernodeSize = 128;

struct RowRange {
  vertex_t begin = 0;
  vertex_t end = 0;
  vertex_t size() const noexcept { return end - begin; }
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

/// Phase-one result for a chunk: bit s is set iff nnz(U(s,:)) equals
/// nnz(U(s-1,:)) - 1, and every row with a clear bit is a leader.
struct ChunkBitmap {
  RowRange range;
  std::vector<std::uint8_t> bits;
  std::vector<vertex_t> leaders;

  bool bit(vertex_t row) const noexcept { return bits[row - range.begin] != 0; }
  /// Bits as a '0'/'1' string, first row first.
  std::string to_string() const;
};

/// The first row of a chunk always gets a clear bit, so no supernode
/// crosses a chunk boundary. nnz_upper is indexed by absolute row.
ChunkBitmap phase1_bitmap(std::span<const std::size_t> nnz_upper, RowRange chunk);

/// L(s, r) != 0.
using LowerLookup = std::function<bool(vertex_t s, vertex_t r)>;

/// Grows every leader r through rows s with a set bit while L(s, r) is
/// present and the block holds fewer than max_size rows. A row that stops a
/// block becomes a leader itself and grows in the next round. Leaders of one
/// round grow independently.
SupernodePartition phase2_grow(const ChunkBitmap& bitmap, const LowerLookup& lower, std::size_t max_size);

/// phase1 then phase2 over one chunk of a structure. Throws MissingRows if
/// any row of the chunk has not been computed, InvalidConfig if max_size == 0.
SupernodePartition detect_chunk(const FillStructure& fs, RowRange chunk, std::size_t max_size);

/// detect_chunk over consecutive chunks of chunk_size rows, concatenated.
SupernodePartition detect_supernodes(const FillStructure& fs, std::size_t max_size, std::size_t chunk_size);

/// Confirms both T3 conditions on every non-leading row and the size cap.
/// Returns an empty string when the partition is valid, else the first
/// violation.
std::string check_supernodes(const FillStructure& fs, const SupernodePartition& p, std::size_t max_size);

}  // namespace symfill
