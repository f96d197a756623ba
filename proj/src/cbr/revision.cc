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

#include "cplan/cbr/revision.h"

#include <algorithm>

namespace cplan::cbr {

std::string_view OutcomeName(Outcome o) {
  return o == Outcome::kSatisfactory ? "satisfactory" : "unsatisfactory";
}

std::string_view RevisionKindName(RevisionAction::Kind k) {
  switch (k) {
    case RevisionAction::Kind::kRetainSatisfactory: return "retain_satisfactory";
    case RevisionAction::Kind::kRepairManual: return "repair_manual";
    case RevisionAction::Kind::kRepairThreshold: return "repair_threshold";
  }
  return "retain_satisfactory";
}

Outcome EvaluateOutcome(const QualitySituation& observed, const Objectives& objectives) {
  const bool reached =
      observed.cp >= objectives.cp_target && observed.cpk >= objectives.cpk_target &&
      observed.ncr <= objectives.ncr_target && observed.encr <= objectives.encr_target;
  return reached ? Outcome::kSatisfactory : Outcome::kUnsatisfactory;
}

RevisionAction Revise(const Case& c, Outcome outcome, const RetrievalConfig& cfg, double delta) {
  if (!c.observed) {
    throw Error(ErrorCode::kPreconditionFailed, "revision needs observed results");
  }
  if (outcome == Outcome::kSatisfactory) return {RevisionAction::Kind::kRetainSatisfactory, {}};
  if (c.origin == Origin::kManual) return {RevisionAction::Kind::kRepairManual, {}};
  if (!c.retrieval_distance) {
    throw Error(ErrorCode::kPreconditionFailed,
                "automatic case carries no retrieval distance to repair the threshold from");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kValidationFailed, "repair delta must lie in (0,1)");
  }
  const double lowered = std::max(0.0, (1.0 - delta) * *c.retrieval_distance);
  return {RevisionAction::Kind::kRepairThreshold, std::min(cfg.threshold, lowered)};
}

}  // namespace cplan::cbr
