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

#ifndef CPLAN_WORKFLOW_SESSION_H_
#define CPLAN_WORKFLOW_SESSION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cplan/cbr/case.h"
#include "cplan/cbr/case_base.h"
#include "cplan/cbr/revision.h"
#include "cplan/mcdm/ahp.h"
#include "cplan/mcdm/capacity.h"
#include "cplan/mcdm/choquet.h"

namespace cplan::workflow {

using SessionId = std::int64_t;

// Decision-session states. Allowed edges:
//   Created -> SituationEntered -> {AutoRecommended, ManualRequired}
//   AutoRecommended -> {ScenarioSelected, ManualRequired}
//   ManualRequired -> ManualEvaluated -> {ScenarioSelected, ManualRequired}
//   ScenarioSelected -> Applied -> ResultsRecorded -> Closed
enum class SessionState {
  kCreated,
  kSituationEntered,
  kAutoRecommended,
  kManualRequired,
  kManualEvaluated,
  kScenarioSelected,
  kApplied,
  kResultsRecorded,
  kClosed,
};

std::string_view StateName(SessionState s);
std::optional<SessionState> ParseState(std::string_view s);
bool IsEdge(SessionState from, SessionState to);

struct TransitionRecord {
  SessionState from;
  SessionState to;
  std::string at;
  std::string note;
  std::optional<cbr::Recommendation> recommendation;  // set when entering AutoRecommended

  friend bool operator==(const TransitionRecord&, const TransitionRecord&) = default;
};

// Artifacts of one manual evaluation. `matrices` is keyed by criterion and
// empty when the table was supplied directly.
struct ManualEvaluation {
  std::vector<std::string> alternatives;
  std::map<std::string, mcdm::PairwiseMatrix> matrices;
  std::map<std::string, double> consistency_ratios;
  mcdm::EvaluationTable table;
  mcdm::Capacity capacity;
  std::vector<mcdm::ScoredAlternative> ranking;  // table row order
  std::vector<std::string> warnings;

  // Id of the rank-1 alternative.
  const std::string& Best() const;
  friend bool operator==(const ManualEvaluation&, const ManualEvaluation&) = default;
};

// How long the scenario runs before results are judged. Recorded only; the
// engine does not schedule anything.
struct AppliedPeriod {
  std::string duration;  // e.g. "P30D" or "500 parts"
  std::string basis;     // free text

  friend bool operator==(const AppliedPeriod&, const AppliedPeriod&) = default;
};

struct ThresholdChange {
  double before = 0.0;
  double after = 0.0;
  friend bool operator==(const ThresholdChange&, const ThresholdChange&) = default;
};

struct CloseOutcome {
  cbr::Outcome status = cbr::Outcome::kSatisfactory;
  cbr::CaseId case_id = 0;
  cbr::RevisionAction action;
  std::optional<ThresholdChange> threshold_change;
  std::optional<SessionId> successor_session_id;

  friend bool operator==(const CloseOutcome&, const CloseOutcome&) = default;
};

struct Session {
  SessionId id = 0;
  cbr::CaseContext context;
  SessionState state = SessionState::kCreated;
  std::optional<cbr::QualitySituation> situation;
  std::optional<cbr::Objectives> objectives;
  std::optional<cbr::Recommendation> recommendation;
  std::optional<ManualEvaluation> manual;
  // Judgments of a failed manual predecessor, offered for adjustment.
  std::map<std::string, mcdm::PairwiseMatrix> prior_matrices;
  std::optional<std::string> selected_scenario;
  std::optional<cbr::Origin> origin;
  std::optional<AppliedPeriod> period;
  std::optional<cbr::QualitySituation> observed;
  std::vector<std::string> warnings;
  std::string created;
  std::string applied_at;
  std::string recorded_at;
  std::string closed_at;
  std::optional<SessionId> predecessor_id;
  std::optional<CloseOutcome> outcome;
  std::vector<TransitionRecord> trail;

  friend bool operator==(const Session&, const Session&) = default;
};

}  // namespace cplan::workflow

#endif  // CPLAN_WORKFLOW_SESSION_H_
