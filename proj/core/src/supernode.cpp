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

#include "symfill/supernode.hpp"

#include <omp.h>

#include <algorithm>

namespace symfill {

std::string ChunkBitmap::to_string() const {
  std::string out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

ChunkBitmap phase1_bitmap(std::span<const std::size_t> nnz_upper, RowRange chunk) {
  if (chunk.end < chunk.begin || chunk.end > nnz_upper.size()) throw RangeError("chunk outside the row counts");
  ChunkBitmap out;
  out.range = chunk;
  out.bits.assign(chunk.size(), 0);
  const auto rows = static_cast<std::int64_t>(chunk.size());
#pragma omp parallel for if (rows > 4096)
  for (std::int64_t k = 1; k < rows; ++k) {
    const vertex_t s = chunk.begin + static_cast<vertex_t>(k);
    out.bits[k] = nnz_upper[s] + 1 == nnz_upper[s - 1] ? 1 : 0;
  }
  for (vertex_t s = chunk.begin; s < chunk.end; ++s) {
    if (!out.bit(s)) out.leaders.push_back(s);
  }
  return out;
}

SupernodePartition phase2_grow(const ChunkBitmap& bitmap, const LowerLookup& lower, std::size_t max_size) {
  if (max_size == 0) throw InvalidConfig("maximum supernode size must be at least 1");
  const RowRange range = bitmap.range;
  std::vector<std::uint8_t> leader(range.size(), 0);
  std::vector<vertex_t> round = bitmap.leaders;
  for (vertex_t r : round) leader[r - range.begin] = 1;
  while (!round.empty()) {
    std::vector<vertex_t> stops(round.size(), range.end);
    const auto count = static_cast<std::int64_t>(round.size());
#pragma omp parallel for if (count > 256)
    for (std::int64_t k = 0; k < count; ++k) {
      const vertex_t r = round[k];
      vertex_t s = r + 1;
      while (s < range.end && bitmap.bit(s) && s - r < max_size && lower(s, r)) ++s;
      stops[k] = s;
    }
    std::vector<vertex_t> fresh;
    for (vertex_t s : stops) {
      if (s < range.end && !leader[s - range.begin]) {
        leader[s - range.begin] = 1;
        fresh.push_back(s);
      }
    }
    round = std::move(fresh);
  }
  std::vector<vertex_t> leaders;
  for (vertex_t s = range.begin; s < range.end; ++s) {
    if (leader[s - range.begin]) leaders.push_back(s);
  }
  return SupernodePartition(range.begin, range.end, std::move(leaders));
}

SupernodePartition detect_chunk(const FillStructure& fs, RowRange chunk, std::size_t max_size) {
  if (chunk.end < chunk.begin || chunk.end > fs.n()) throw RangeError("chunk outside the structure");
  if (!fs.rows_complete(chunk.begin, chunk.end)) {
    throw MissingRows("fill detection has not finished rows " + std::to_string(chunk.begin) + ".." +
                      std::to_string(chunk.end - 1));
  }
  std::vector<std::size_t> counts(fs.n(), 0);
  for (vertex_t s = chunk.begin; s < chunk.end; ++s) counts[s] = fs.nnz_upper(s);
  const ChunkBitmap bitmap = phase1_bitmap(counts, chunk);
  return phase2_grow(bitmap, [&fs](vertex_t s, vertex_t r) { return fs.has_lower(s, r); }, max_size);
}

SupernodePartition detect_supernodes(const FillStructure& fs, std::size_t max_size, std::size_t chunk_size) {
  if (chunk_size == 0) throw InvalidConfig("chunk size must be at least 1");
  SupernodePartition out(0, 0, {});
  for (std::size_t b = 0; b < fs.n(); b += chunk_size) {
    const auto e = static_cast<vertex_t>(std::min<std::size_t>(fs.n(), b + chunk_size));
    out.append(detect_chunk(fs, {static_cast<vertex_t>(b), e}, max_size));
  }
  return out;
}

std::string check_supernodes(const FillStructure& fs, const SupernodePartition& p, std::size_t max_size) {
  if (p.begin() != 0 || p.end() != fs.n()) return "partition does not cover every row";
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto [r, e] = p.block(k);
    if (e - r > max_size) return "block at row " + std::to_string(r) + " exceeds the size cap";
    for (vertex_t s = r + 1; s < e; ++s) {
      if (fs.nnz_upper(s) + 1 != fs.nnz_upper(s - 1)) {
        return "row " + std::to_string(s) + " breaks the upper-count condition";
      }
      if (!fs.has_lower(s, r)) return "row " + std::to_string(s) + " lacks L(s, " + std::to_string(r) + ")";
    }
  }
  return {};
}

}  // namespace symfill
