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

#ifndef CPLAN_CBR_REVISION_H_
#define CPLAN_CBR_REVISION_H_

#include <optional>
#include <string_view>

#include "cplan/cbr/case.h"
#include "cplan/cbr/case_base.h"

namespace cplan::cbr {

enum class Outcome { kSatisfactory, kUnsatisfactory };
std::string_view OutcomeName(Outcome o);

// Conjunctive and boundary-inclusive: capability indices must reach their
// targets and both rates must stay at or below theirs.
Outcome EvaluateOutcome(const QualitySituation& observed, const Objectives& objectives);

struct RevisionAction {
  enum class Kind {
    kRetainSatisfactory,
    kRepairManual,     // re-open pairwise elicitation for the DM
    kRepairThreshold,  // automatic choice failed: tighten the threshold
  };
  Kind kind = Kind::kRetainSatisfactory;
  std::optional<double> new_threshold;  // set for kRepairThreshold

  friend bool operator==(const RevisionAction&, const RevisionAction&) = default;
};
std::string_view RevisionKindName(RevisionAction::Kind k);

inline constexpr double kDefaultRepairDelta = 0.05;

// Decides how a closed case feeds back into the system. A failed automatic
// case lowers the threshold to min(current, (1 - delta) * d_fail), where
// d_fail is the distance at which its solution was retrieved; the threshold
// never increases. Throws Error(kPreconditionFailed) when the case has no
// observed results, or is automatic without a retrieval distance.
RevisionAction Revise(const Case& c, Outcome outcome, const RetrievalConfig& cfg,
                      double delta = kDefaultRepairDelta);

}  // namespace cplan::cbr

#endif  // CPLAN_CBR_REVISION_H_
