// Copyright 2026 The thetazero Authors.
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

#ifndef THETAZERO_ERRORS_H_
#define THETAZERO_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tz {

// Error categories; the numeric values are shared with the C API.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kSizeBound = 2,
  kNotTransverse = 3,
  kNotSaturated = 4,
  kNotLagrangian = 5,
  kParse = 6,
  kInvariantViolated = 7,
  kOverflow = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown before an enumeration starts when its cardinality exceeds the bound.
class SizeBoundError : public Error {
 public:
  SizeBoundError(const std::string& what, double cardinality)
      : Error(ErrorCode::kSizeBound,
              what + " (cardinality " + std::to_string(cardinality) + ")"),
        cardinality_(cardinality) {}
  double cardinality() const { return cardinality_; }

 private:
  double cardinality_;
};

// A theorem-level identity failed. This always indicates a bug.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what)
      : Error(ErrorCode::kInvariantViolated, what) {}
};

inline void Require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace tz

#endif  // THETAZERO_ERRORS_H_
