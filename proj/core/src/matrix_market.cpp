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

#include "symfill/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace symfill {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank_or_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '%';
}

struct Banner {
  bool symmetric = false;
};

Banner parse_banner(const std::string& line) {
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  if (!(ss >> tag >> object >> format >> field >> symmetry) || tag != "%%MatrixMarket") {
    throw ParseError("missing or malformed %%MatrixMarket banner");
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("banner object must be 'matrix'");
  if (format == "array") throw UnsupportedFormat("dense 'array' Matrix Market files are not supported");
  if (format != "coordinate") throw ParseError("unknown storage format '" + format + "'");
  if (field == "complex") throw UnsupportedFormat("complex fields are not supported");
  if (field != "pattern" && field != "real" && field != "integer") {
    throw ParseError("unknown field '" + field + "'");
  }
  Banner b;
  if (symmetry == "general") {
    b.symmetric = false;
  } else if (symmetry == "symmetric" || symmetry == "skew-symmetric") {
    b.symmetric = true;
  } else if (symmetry == "hermitian") {
    throw UnsupportedFormat("hermitian symmetry is not supported");
  } else {
    throw ParseError("unknown symmetry '" + symmetry + "'");
  }
  return b;
}

}  // namespace

CsrGraph parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream");
  const Banner banner = parse_banner(line);

  bool have_size = false;
  while (!have_size && std::getline(in, line)) have_size = !blank_or_comment(line);
  if (!have_size) throw ParseError("missing size line");

  std::uint64_t rows = 0, cols = 0, declared = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> declared)) throw ParseError("malformed size line: '" + line + "'");
  }
  if (rows != cols) throw UnsupportedFormat("matrix must be square for LU structure analysis");
  if (rows > 0xFFFFFFFEull) throw RangeError("matrix order exceeds the vertex id range");
  const auto n = static_cast<vertex_t>(rows);

  std::vector<std::pair<vertex_t, vertex_t>> entries;
  entries.reserve(banner.symmetric ? 2 * declared : declared);
  std::uint64_t seen = 0;
  while (seen < declared && std::getline(in, line)) {
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    long long i = 0, j = 0;
    if (!(ss >> i >> j)) throw ParseError("malformed entry line: '" + line + "'");
    if (i < 1 || j < 1 || static_cast<std::uint64_t>(i) > rows || static_cast<std::uint64_t>(j) > rows) {
      throw RangeError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside the declared " + std::to_string(rows) + " x " + std::to_string(rows));
    }
    const auto r = static_cast<vertex_t>(i - 1);
    const auto c = static_cast<vertex_t>(j - 1);
    entries.emplace_back(r, c);
    if (banner.symmetric && r != c) entries.emplace_back(c, r);
    ++seen;
  }
  if (seen < declared) {
    throw ParseError("expected " + std::to_string(declared) + " entries, found " + std::to_string(seen));
  }
  while (std::getline(in, line)) {
    if (!blank_or_comment(line)) throw ParseError("unexpected content after the last entry");
  }
  return CsrGraph::from_entries(n, entries);
}

CsrGraph load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrGraph& g) {
  const auto entries = g.entries_with_diagonal();
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << g.n() << ' ' << g.n() << ' ' << entries.size() << '\n';
  for (const auto& [u, v] : entries) out << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace symfill
