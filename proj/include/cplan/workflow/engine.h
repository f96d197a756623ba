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

#ifndef CPLAN_WORKFLOW_ENGINE_H_
#define CPLAN_WORKFLOW_ENGINE_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cplan/cbr/case_base.h"
#include "cplan/workflow/scenario.h"
#include "cplan/workflow/session.h"

namespace cplan::workflow {

struct EngineConfig {
  cbr::RetrievalConfig retrieval;
  double repair_delta = cbr::kDefaultRepairDelta;
  double cr_threshold = mcdm::kAcceptableConsistencyRatio;
  // When set, a consistency ratio above cr_threshold rejects the evaluation
  // instead of attaching a warning.
  bool strict_consistency = false;

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

std::vector<FieldViolation> ValidateEngineConfig(const EngineConfig& cfg);

// Everything the service persists.
struct SystemState {
  cbr::CaseBase cases;
  ScenarioCatalog catalog = ScenarioCatalog::Default();
  EngineConfig config;
  std::map<SessionId, Session> sessions;
  SessionId next_session_id = 1;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

enum class AuditKind { kTransition, kRecommendation, kRevision, kThresholdChange, kRetention };
std::string_view AuditKindName(AuditKind k);
std::optional<AuditKind> ParseAuditKind(std::string_view s);

struct AuditEvent {
  std::string timestamp;
  SessionId session_id = 0;  // 0 for events outside any session
  AuditKind kind = AuditKind::kTransition;
  std::string before;
  std::string after;

  friend bool operator==(const AuditEvent&, const AuditEvent&) = default;
};

// Input of a manual evaluation: either one pairwise matrix per criterion
// (over the alternatives) or a ready-made table, plus the capacity.
struct ManualInput {
  std::vector<std::string> alternatives;  // empty: the whole catalog, in order
  std::map<std::string, mcdm::PairwiseMatrix> matrices;
  std::optional<mcdm::EvaluationTable> table;
  mcdm::Capacity capacity;
};

// Runs decision sessions over a SystemState. Each mutating call either
// completes or throws without touching the state, and queues the audit
// events it produced. Not thread-safe; callers serialize.
class Engine {
 public:
  using Clock = std::function<std::string()>;

  explicit Engine(SystemState state, Clock clock = {});

  const SystemState& state() const { return state_; }
  const Session& session(SessionId id) const;

  // Events produced since the last call, in order.
  std::vector<AuditEvent> TakeEvents();

  SessionId CreateSession(cbr::CaseContext context = {});

  // Created -> SituationEntered -> AutoRecommended | ManualRequired.
  SessionState SubmitSituation(SessionId id, const cbr::QualitySituation& situation,
                               const cbr::Objectives& objectives,
                               std::optional<cbr::CaseContext> context = std::nullopt);
  // Objectives stay editable until the scenario is applied.
  void UpdateObjectives(SessionId id, const cbr::Objectives& objectives);

  // AutoRecommended: take the recommendation. ManualEvaluated: take the
  // rank-1 alternative.
  void Accept(SessionId id);
  // AutoRecommended or ManualEvaluated -> ManualRequired.
  void Reject(SessionId id);

  const ManualEvaluation& ManualEvaluate(SessionId id, const ManualInput& input);
  void ConfirmSelection(SessionId id, const std::string& scenario_id);
  void Apply(SessionId id, AppliedPeriod period = {});
  void RecordResults(SessionId id, const cbr::QualitySituation& observed);
  // Evaluates the outcome, revises, retains the case and freezes the session.
  CloseOutcome Close(SessionId id);

  // Administrative changes outside sessions.
  void SetConfig(const EngineConfig& cfg);
  cbr::CaseId ImportCase(cbr::Case c);
  void AddScenario(ControlScenario s);
  void UpdateScenario(ControlScenario s);

 private:
  Session& MutableSession(SessionId id);
  void Move(Session& s, SessionState to, std::string note,
            std::optional<cbr::Recommendation> rec = std::nullopt);
  void Emit(SessionId id, AuditKind kind, std::string before, std::string after);
  std::string Now() const;

  SystemState state_;
  Clock clock_;
  std::vector<AuditEvent> events_;
};

// ISO-8601 UTC wall-clock time with second resolution.
std::string UtcNow();

}  // namespace cplan::workflow

#endif  // CPLAN_WORKFLOW_ENGINE_H_
