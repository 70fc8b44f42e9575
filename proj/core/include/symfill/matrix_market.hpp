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

#include "symfill/csr_graph.hpp"

namespace symfill {

/// Reads a Matrix Market "coordinate" file (pattern, real or integer field;
/// general, symmetric or skew-symmetric symmetry) into its adjacency graph.
///
/// Indices are shifted to 0-based, symmetric files are expanded to both
/// triangles, duplicate coordinates are merged and diagonal entries are
/// recorded as flags. Values are read past and discarded.
///
/// Errors: ParseError for a malformed banner, size line or entry line;
/// RangeError for an index outside the declared bounds; UnsupportedFormat for
/// "array" storage, complex/hermitian data or a non-square matrix.
CsrGraph parse_matrix_market(std::istream& in);
CsrGraph load_matrix_market(const std::filesystem::path& path);

/// Writes `g` as "matrix coordinate pattern general", diagonal flags included.
void write_matrix_market(std::ostream& out, const CsrGraph& g);

}  // namespace symfill
