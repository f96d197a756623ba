/*
 * Copyright 2026 The cplan Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CPLAN_ERROR_H_
#define CPLAN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cplan {

// Closed set of failure categories. The api layer maps each one to an HTTP
// status and a machine-readable code string (see docs/api.md).
enum class ErrorCode {
  kValidationFailed,      // malformed or out-of-bounds input
  kNotFound,              // unknown session, case, or scenario resource
  kIllegalTransition,     // workflow operation not allowed in current state
  kDomainError,           // numeric domain violation (capacity, Choquet input)
  kShapeError,            // dimension mismatch between matrices/tables
  kUnsupportedDimension,  // e.g. consistency ratio for n > 9
  kUnknownCriterion,
  kUnknownScenario,
  kInconsistentJudgments,  // CR above threshold in strict mode
  kPreconditionFailed,
  kStorageIntegrity,  // duplicate ids, corrupt or unsupported documents
  kStorageIo,
  kUnauthorized,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// One field-level violation attached to an Error ("details" in ApiError).
struct FieldViolation {
  std::string field;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<FieldViolation> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const { return code_; }
  const std::vector<FieldViolation>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<FieldViolation> details_;
};

}  // namespace cplan

#endif  // CPLAN_ERROR_H_
