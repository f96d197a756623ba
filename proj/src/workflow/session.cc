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

#include "cplan/workflow/session.h"

#include <array>

#include "cplan/error.h"

namespace cplan::workflow {

namespace {

constexpr std::array<std::string_view, 9> kStateNames = {
    "Created",          "SituationEntered", "AutoRecommended", "ManualRequired", "ManualEvaluated",
    "ScenarioSelected", "Applied",          "ResultsRecorded", "Closed",
};

}  // namespace

std::string_view StateName(SessionState s) { return kStateNames[static_cast<std::size_t>(s)]; }

std::optional<SessionState> ParseState(std::string_view s) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i) {
    if (kStateNames[i] == s) return static_cast<SessionState>(i);
  }
  return std::nullopt;
}

bool IsEdge(SessionState from, SessionState to) {
  using S = SessionState;
  switch (from) {
    case S::kCreated: return to == S::kSituationEntered;
    case S::kSituationEntered: return to == S::kAutoRecommended || to == S::kManualRequired;
    case S::kAutoRecommended: return to == S::kScenarioSelected || to == S::kManualRequired;
    case S::kManualRequired: return to == S::kManualEvaluated;
    case S::kManualEvaluated: return to == S::kScenarioSelected || to == S::kManualRequired;
    case S::kScenarioSelected: return to == S::kApplied;
    case S::kApplied: return to == S::kResultsRecorded;
    case S::kResultsRecorded: return to == S::kClosed;
    case S::kClosed: return false;
  }
  return false;
}

const std::string& ManualEvaluation::Best() const {
  for (const auto& r : ranking) {
    if (r.rank == 1) return r.id;
  }
  throw Error(ErrorCode::kInternal, "manual evaluation has no rank-1 alternative");
}

}  // namespace cplan::workflow
