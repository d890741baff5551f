// Copyright 2026 The qclab Authors
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
#include <stdexcept>
#include <string>

namespace qclab {

using Vertex = std::uint32_t;
using Count = std::uint64_t;

/// A precondition on user-supplied parameters was violated.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two inputs that must agree in shape (vertex count, length) do not.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A query or memory budget was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, Count step)
      : std::runtime_error(what), step_(step) {}
  Count step() const noexcept { return step_; }

 private:
  Count step_;
};

/// More samples were requested from a stream than it was configured for.
class StreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr Count choose2(Count n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace qclab
