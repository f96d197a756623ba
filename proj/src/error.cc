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

#include "cplan/error.h"

namespace cplan {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidationFailed: return "validation_failed";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kIllegalTransition: return "illegal_transition";
    case ErrorCode::kDomainError: return "domain_error";
    case ErrorCode::kShapeError: return "shape_error";
    case ErrorCode::kUnsupportedDimension: return "unsupported_dimension";
    case ErrorCode::kUnknownCriterion: return "unknown_criterion";
    case ErrorCode::kUnknownScenario: return "unknown_scenario";
    case ErrorCode::kInconsistentJudgments: return "inconsistent_judgments";
    case ErrorCode::kPreconditionFailed: return "precondition_failed";
    case ErrorCode::kStorageIntegrity: return "storage_integrity";
    case ErrorCode::kStorageIo: return "storage_io";
    case ErrorCode::kUnauthorized: return "unauthorized";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "internal_error";
}

}  // namespace cplan
