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

#include "symfill/csr_graph.hpp"

namespace symfill {

/// Seeded random pattern: every off-diagonal (i, j) is present independently
/// with probability `density`; every diagonal flag is set.
CsrGraph random_pattern(vertex_t n, double density, std::uint64_t seed);

/// Random pattern whose row i holds about `degree` off-diagonal entries drawn
/// uniformly, giving a fixed expected degree regardless of n.
CsrGraph random_degree_pattern(vertex_t n, double degree, std::uint64_t seed);

/// A banded lower part plus sparse long upper edges. Rows further down see
/// longer fill paths, so per-row work grows with the row index.
CsrGraph skewed_pattern(vertex_t n, vertex_t band, double upper_density, std::uint64_t seed);

}  // namespace symfill
