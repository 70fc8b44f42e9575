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
#include <stdexcept>
#include <string>

namespace symfill {

/// Vertex id of G(A); one vertex per row/column of the matrix.
using vertex_t = std::uint32_t;
/// Offset into an adjacency or structure array.
using edge_t = std::uint64_t;
/// Index of an active source inside a TraversalState (the tracker value).
using slot_t = std::uint32_t;

/// Base class of every error thrown by the library. The CLI maps the
/// concrete subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input errors.
class ParseError : public Error {
 public:
  using Error::Error;
};
class RangeError : public Error {
 public:
  using Error::Error;
};
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};
class DimensionError : public Error {
 public:
  using Error::Error;
};
class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

// Configuration and resource errors.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};
class GuardExceeded : public Error {
 public:
  using Error::Error;
};
class ArenaExhausted : public Error {
 public:
  using Error::Error;
};
class ConfigurationInfeasible : public Error {
 public:
  using Error::Error;
};
class SpillIOError : public Error {
 public:
  using Error::Error;
};
class MissingRows : public Error {
 public:
  using Error::Error;
};

/// Raised in checked mode when an internal invariant audit fails.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace symfill
