// Copyright 2026 The etamask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ETAMASK_ERRORS_HPP
#define ETAMASK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace etamask {

// Error taxonomy shared by the library and the CLI exit-code contract.
// Every error carries a short machine-readable code; the CLI prints it on
// stderr and maps InfeasibilityError to exit 1 and everything else to exit 2.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed arguments: bad shapes, out-of-range indices, mismatched spaces.
struct InputError : Error {
  explicit InputError(const std::string& what) : Error("bad-input", what) {}
};

// A metric candidate failed validation (non-Hermitian or not positive-definite).
struct MetricError : Error {
  explicit MetricError(const std::string& what) : Error("metric-error", what) {}
};

// Linearly dependent vectors where independence is required.
struct RankError : Error {
  explicit RankError(const std::string& what) : Error("rank-error", what) {}
};

// The requested construction does not exist for these inputs
// (e.g. source/target Gram matrices disagree).
struct InfeasibilityError : Error {
  explicit InfeasibilityError(const std::string& what)
      : Error("gram-mismatch", what) {}
};

// A guard against combinatorial or exponential blow-up tripped.
struct SizeError : Error {
  explicit SizeError(const std::string& what) : Error("size-error", what) {}
};

// A file could not be parsed into the expected schema.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse-error", what) {}
};

}  // namespace etamask

#endif  // ETAMASK_ERRORS_HPP
