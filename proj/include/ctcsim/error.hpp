// Copyright 2026 The ctcsim Authors
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

#include <stdexcept>
#include <string>

namespace ctcsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported matrix/register dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on a value was violated (non-physical state, bad range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Text input rejected; `line` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// The S map was applied to a state with Bloch x-component 1, where the
/// chronology-respecting output is not determined by self-consistency.
class AmbiguousStateError : public Error {
 public:
  AmbiguousStateError(int multiplicity, const std::string& what)
      : Error(what), multiplicity(multiplicity) {}
  int multiplicity;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An invariant the mathematics guarantees failed numerically; indicates a
/// bug or a tolerance set far too tight, never a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctcsim
