// Copyright 2026 The evvalet Authors
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

#ifndef EVVALET_ERROR_HPP
#define EVVALET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evvalet {

/// Base class of every error thrown by the library.
class ValetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `position()` is the byte offset where parsing
/// stopped, or 0 when the document parsed but failed validation.
class ParseError : public ValetError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValetError(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A solver precondition or size cap was not met.
class RefusedError : public ValetError {
 public:
  using ValetError::ValetError;
};

/// Numerical solver failed (iteration limit, packing overflow).
class SolverError : public ValetError {
 public:
  using ValetError::ValetError;
};

}  // namespace evvalet

#endif  // EVVALET_ERROR_HPP
