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

#include "cplan/workflow/engine.h"

#include <chrono>
#include <ctime>
#include <set>

#include "cplan/error.h"
#include "json.hpp"

namespace cplan::workflow {

using cbr::Origin;
using nlohmann::json;

std::vector<FieldViolation> ValidateEngineConfig(const EngineConfig& cfg) {
  auto out = cbr::ValidateConfig(cfg.retrieval);
  if (!(cfg.repair_delta > 0.0 && cfg.repair_delta < 1.0)) {
    out.push_back({"repair_delta", "must lie in (0,1)"});
  }
  if (!(cfg.cr_threshold >= 0.0)) out.push_back({"cr_threshold", "must be non-negative"});
  return out;
}

std::string_view AuditKindName(AuditKind k) {
  switch (k) {
    case AuditKind::kTransition: return "transition";
    case AuditKind::kRecommendation: return "recommendation";
    case AuditKind::kRevision: return "revision";
    case AuditKind::kThresholdChange: return "threshold_change";
    case AuditKind::kRetention: return "retention";
  }
  return "transition";
}

std::optional<AuditKind> ParseAuditKind(std::string_view s) {
  for (auto k : {AuditKind::kTransition, AuditKind::kRecommendation, AuditKind::kRevision,
                 AuditKind::kThresholdChange, AuditKind::kRetention}) {
    if (AuditKindName(k) == s) return k;
  }
  return std::nullopt;
}

std::string UtcNow() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

[[noreturn]] void Illegal(const Session& s, const std::string& op) {
  throw Error(ErrorCode::kIllegalTransition, "cannot " + op + " session " + std::to_string(s.id) +
                                                 " in state " + std::string(StateName(s.state)));
}

void RequireState(const Session& s, std::initializer_list<SessionState> allowed,
                  const std::string& op) {
  for (auto a : allowed) {
    if (s.state == a) return;
  }
  Illegal(s, op);
}

std::string RecommendationJson(const cbr::Recommendation& r) {
  return json{{"scenario_id", r.scenario_id},
              {"distance", r.distance},
              {"source_case_id", r.source_case_id}}
      .dump();
}

// Rolls queued events back when the wrapped operation throws.
class EventMark {
 public:
  explicit EventMark(std::vector<AuditEvent>& events) : events_(events), mark_(events.size()) {}
  ~EventMark() {
    if (!committed_) events_.resize(mark_);
  }
  void Commit() { committed_ = true; }

 private:
  std::vector<AuditEvent>& events_;
  std::size_t mark_;
  bool committed_ = false;
};

}  // namespace

Engine::Engine(SystemState state, Clock clock)
    : state_(std::move(state)), clock_(clock ? std::move(clock) : Clock(UtcNow)) {}

std::string Engine::Now() const { return clock_(); }

std::vector<AuditEvent> Engine::TakeEvents() {
  std::vector<AuditEvent> out;
  out.swap(events_);
  return out;
}

const Session& Engine::session(SessionId id) const {
  auto it = state_.sessions.find(id);
  if (it == state_.sessions.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session " + std::to_string(id));
  }
  return it->second;
}

Session& Engine::MutableSession(SessionId id) {
  auto it = state_.sessions.find(id);
  if (it == state_.sessions.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session " + std::to_string(id));
  }
  return it->second;
}

void Engine::Emit(SessionId id, AuditKind kind, std::string before, std::string after) {
  events_.push_back({Now(), id, kind, std::move(before), std::move(after)});
}

void Engine::Move(Session& s, SessionState to, std::string note,
                  std::optional<cbr::Recommendation> rec) {
  if (!IsEdge(s.state, to)) {
    throw Error(ErrorCode::kIllegalTransition, "no transition from " +
                                                   std::string(StateName(s.state)) + " to " +
                                                   std::string(StateName(to)));
  }
  TransitionRecord t{s.state, to, Now(), std::move(note), std::move(rec)};
  Emit(s.id, AuditKind::kTransition, std::string(StateName(s.state)), std::string(StateName(to)));
  s.state = to;
  s.trail.push_back(std::move(t));
}

SessionId Engine::CreateSession(cbr::CaseContext context) {
  Session s;
  s.id = state_.next_session_id;
  s.context = std::move(context);
  s.created = Now();
  state_.sessions.emplace(s.id, std::move(s));
  return state_.next_session_id++;
}

SessionState Engine::SubmitSituation(SessionId id, const cbr::QualitySituation& situation,
                                     const cbr::Objectives& objectives,
                                     std::optional<cbr::CaseContext> context) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kCreated}, "submit a situation to");
  std::vector<FieldViolation> violations = cbr::ValidateSituation(situation);
  for (auto& v : cbr::ValidateObjectives(objectives)) violations.push_back(std::move(v));
  if (!violations.empty()) {
    const std::string message =
        "invalid situation entry: " + violations[0].field + " " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  if (context) s.context = *context;
  s.situation = situation;
  s.objectives = objectives;
  s.warnings = cbr::SituationWarnings(situation);
  Move(s, SessionState::kSituationEntered, "situation entered");

  const auto hit = cbr::Retrieve(situation, state_.cases, state_.config.retrieval);
  if (hit) {
    auto rec = cbr::Adapt(*hit, state_.cases);
    Emit(s.id, AuditKind::kRecommendation, "", RecommendationJson(rec));
    s.recommendation = rec;
    Move(s, SessionState::kAutoRecommended, "similar case found", rec);
  } else {
    Move(s, SessionState::kManualRequired, "no similar case below the threshold");
  }
  MutableSession(id) = std::move(s);
  mark.Commit();
  return session(id).state;
}

void Engine::UpdateObjectives(SessionId id, const cbr::Objectives& objectives) {
  Session& s = MutableSession(id);
  RequireState(s,
               {SessionState::kSituationEntered, SessionState::kAutoRecommended,
                SessionState::kManualRequired, SessionState::kManualEvaluated,
                SessionState::kScenarioSelected},
               "edit objectives of");
  cbr::RequireValid(objectives);
  s.objectives = objectives;
}

void Engine::Accept(SessionId id) {
  EventMark mark(events_);
  Session s = session(id);
  if (s.state == SessionState::kAutoRecommended) {
    s.selected_scenario = s.recommendation->scenario_id;
    s.origin = Origin::kAutomatic;
    Move(s, SessionState::kScenarioSelected, "recommendation accepted");
  } else if (s.state == SessionState::kManualEvaluated) {
    s.selected_scenario = s.manual->Best();
    s.origin = Origin::kManual;
    Move(s, SessionState::kScenarioSelected, "best ranked scenario accepted");
  } else {
    Illegal(s, "accept a recommendation for");
  }
  MutableSession(id) = std::move(s);
  mark.Commit();
}

void Engine::Reject(SessionId id) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kAutoRecommended, SessionState::kManualEvaluated},
               "reject the proposal of");
  const char* note = s.state == SessionState::kAutoRecommended
                         ? "recommendation rejected, manual choice"
                         : "back to manual choice";
  Move(s, SessionState::kManualRequired, note);
  MutableSession(id) = std::move(s);
  mark.Commit();
}

const ManualEvaluation& Engine::ManualEvaluate(SessionId id, const ManualInput& input) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kManualRequired, SessionState::kManualEvaluated},
               "evaluate alternatives for");
  const mcdm::CriteriaSet& criteria = input.capacity.criteria();

  std::vector<std::string> alternatives = input.alternatives;
  if (alternatives.empty()) {
    alternatives = input.table ? input.table->alternatives() : state_.catalog.ids();
  }
  std::set<std::string> unique(alternatives.begin(), alternatives.end());
  if (unique.size() != alternatives.size()) {
    throw Error(ErrorCode::kValidationFailed, "alternatives contain duplicates");
  }
  for (const auto& a : alternatives) {
    if (!state_.catalog.Contains(a)) {
      throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + a + "'");
    }
  }

  std::vector<std::string> warnings;
  std::map<std::string, double> ratios;
  std::optional<mcdm::EvaluationTable> table;
  if (input.table) {
    if (!(input.table->criteria() == criteria)) {
      throw Error(ErrorCode::kShapeError, "table and capacity use different criteria");
    }
    if (input.table->alternatives() != alternatives) {
      throw Error(ErrorCode::kShapeError, "table rows do not match the alternatives");
    }
    table = *input.table;
  } else {
    for (const auto& [name, m] : input.matrices) {
      if (!criteria.IndexOf(name)) {
        throw Error(ErrorCode::kUnknownCriterion,
                    "matrix given for unknown criterion '" + name + "'");
      }
    }
    std::vector<std::vector<double>> rows(alternatives.size(),
                                          std::vector<double>(criteria.size(), 0.0));
    for (std::size_t c = 0; c < criteria.size(); ++c) {
      const std::string& name = criteria.name(c);
      auto it = input.matrices.find(name);
      if (it == input.matrices.end()) {
        throw Error(ErrorCode::kValidationFailed,
                    "missing pairwise matrix for criterion '" + name + "'",
                    {{"matrices." + name, "required"}});
      }
      const mcdm::PairwiseMatrix& m = it->second;
      if (m.size() != alternatives.size()) {
        throw Error(ErrorCode::kShapeError, "matrix for '" + name + "' is " +
                                                std::to_string(m.size()) + "x" +
                                                std::to_string(m.size()) + ", expected " +
                                                std::to_string(alternatives.size()));
      }
      const auto pr = mcdm::ComputePriorities(m);
      if (pr.used_geometric_fallback) {
        warnings.push_back("priorities for '" + name + "' fell back to the geometric mean");
      }
      if (!mcdm::OnSaatyScale(m)) {
        warnings.push_back("matrix for '" + name + "' has entries outside the 1/9..9 scale");
      }
      if (m.size() <= mcdm::kMaxCriteria) {
        const double cr = mcdm::ConsistencyRatio(m);
        ratios[name] = cr;
        if (cr > state_.config.cr_threshold) {
          if (state_.config.strict_consistency) {
            throw Error(ErrorCode::kInconsistentJudgments,
                        "consistency ratio " + std::to_string(cr) + " for '" + name + "' exceeds " +
                            std::to_string(state_.config.cr_threshold),
                        {{"matrices." + name, "consistency ratio too high"}});
          }
          warnings.push_back("consistency ratio " + std::to_string(cr) + " for '" + name +
                             "' exceeds " + std::to_string(state_.config.cr_threshold));
        }
      } else {
        warnings.push_back("consistency ratio for '" + name + "' is not defined above 9 items");
      }
      for (std::size_t a = 0; a < alternatives.size(); ++a) rows[a][c] = pr.weights[a];
    }
    table.emplace(criteria, alternatives, std::move(rows));
  }

  auto ranking = mcdm::RankAlternatives(*table, input.capacity);
  ManualEvaluation eval{
      alternatives,
      input.table ? std::map<std::string, mcdm::PairwiseMatrix>{} : input.matrices,
      std::move(ratios),
      std::move(*table),
      input.capacity,
      std::move(ranking),
      std::move(warnings)};
  if (s.state == SessionState::kManualEvaluated) {
    Move(s, SessionState::kManualRequired, "re-evaluation");
  }
  s.manual = std::move(eval);
  Move(s, SessionState::kManualEvaluated, "best: " + s.manual->Best());
  MutableSession(id) = std::move(s);
  mark.Commit();
  return *session(id).manual;
}

void Engine::ConfirmSelection(SessionId id, const std::string& scenario_id) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kManualEvaluated}, "select a scenario for");
  if (!state_.catalog.Contains(scenario_id)) {
    throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + scenario_id + "'",
                {{"scenario_id", "not in catalog"}});
  }
  s.selected_scenario = scenario_id;
  s.origin = Origin::kManual;
  Move(s, SessionState::kScenarioSelected, "selected " + scenario_id);
  MutableSession(id) = std::move(s);
  mark.Commit();
}

void Engine::Apply(SessionId id, AppliedPeriod period) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kScenarioSelected}, "apply");
  s.period = std::move(period);
  s.applied_at = Now();
  Move(s, SessionState::kApplied, "applied " + *s.selected_scenario);
  MutableSession(id) = std::move(s);
  mark.Commit();
}

void Engine::RecordResults(SessionId id, const cbr::QualitySituation& observed) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kApplied}, "record results for");
  auto violations = cbr::ValidateSituation(observed, "observed.");
  if (!violations.empty()) {
    const std::string message =
        "invalid observed results: " + violations[0].field + " " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  s.observed = observed;
  s.recorded_at = Now();
  Move(s, SessionState::kResultsRecorded, "results recorded");
  MutableSession(id) = std::move(s);
  mark.Commit();
}

CloseOutcome Engine::Close(SessionId id) {
  EventMark mark(events_);
  Session s = session(id);
  RequireState(s, {SessionState::kResultsRecorded}, "close");

  cbr::Case c;
  c.context = s.context;
  c.situation = *s.situation;
  c.scenario_id = *s.selected_scenario;
  c.objectives = *s.objectives;
  c.observed = s.observed;
  c.origin = s.origin.value_or(Origin::kManual);
  c.created = s.created;
  c.closed = Now();
  if (c.origin == Origin::kAutomatic && s.recommendation) {
    c.source_case_id = s.recommendation->source_case_id;
    c.retrieval_distance = s.recommendation->distance;
  }

  CloseOutcome outcome;
  outcome.status = cbr::EvaluateOutcome(*s.observed, *s.objectives);
  c.status = outcome.status == cbr::Outcome::kSatisfactory ? cbr::CaseStatus::kSatisfactory
                                                           : cbr::CaseStatus::kFailed;
  outcome.action =
      cbr::Revise(c, outcome.status, state_.config.retrieval, state_.config.repair_delta);
  Emit(s.id, AuditKind::kRevision, std::string(cbr::OutcomeName(outcome.status)),
       std::string(cbr::RevisionKindName(outcome.action.kind)));

  cbr::CaseBase cases = state_.cases;
  EngineConfig config = state_.config;
  std::optional<Session> successor;

  if (outcome.action.kind == cbr::RevisionAction::Kind::kRepairThreshold) {
    ThresholdChange change{config.retrieval.threshold, *outcome.action.new_threshold};
    config.retrieval.threshold = change.after;
    outcome.threshold_change = change;
    Emit(s.id, AuditKind::kThresholdChange, json(change.before).dump(), json(change.after).dump());
  }

  outcome.case_id = cases.Retain(c);
  Emit(s.id, AuditKind::kRetention, "",
       json{{"case_id", outcome.case_id}, {"status", cbr::CaseStatusName(c.status)}}.dump());

  if (outcome.action.kind == cbr::RevisionAction::Kind::kRepairManual) {
    Session next;
    next.id = state_.next_session_id;
    next.context = s.context;
    next.situation = s.situation;
    next.objectives = s.objectives;
    next.warnings = s.warnings;
    next.created = Now();
    next.predecessor_id = s.id;
    if (s.manual) next.prior_matrices = s.manual->matrices;
    Move(next, SessionState::kSituationEntered, "repair of session " + std::to_string(s.id));
    Move(next, SessionState::kManualRequired, "judgments re-opened for adjustment");
    outcome.successor_session_id = next.id;
    successor = std::move(next);
  }

  s.outcome = outcome;
  s.closed_at = c.closed;
  Move(s, SessionState::kClosed, std::string(cbr::OutcomeName(outcome.status)));

  // Commit.
  state_.cases = std::move(cases);
  state_.config = config;
  if (successor) {
    state_.sessions.emplace(successor->id, std::move(*successor));
    ++state_.next_session_id;
  }
  MutableSession(id) = std::move(s);
  mark.Commit();
  return outcome;
}

void Engine::SetConfig(const EngineConfig& cfg) {
  auto violations = ValidateEngineConfig(cfg);
  if (!violations.empty()) {
    const std::string message =
        "invalid configuration: " + violations[0].field + " " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  if (cfg.retrieval.threshold != state_.config.retrieval.threshold) {
    Emit(0, AuditKind::kThresholdChange, json(state_.config.retrieval.threshold).dump(),
         json(cfg.retrieval.threshold).dump());
  }
  state_.config = cfg;
}

cbr::CaseId Engine::ImportCase(cbr::Case c) {
  if (!state_.catalog.Contains(c.scenario_id)) {
    throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + c.scenario_id + "'");
  }
  cbr::CaseBase cases = state_.cases;
  cbr::CaseId id = 0;
  if (c.id == 0) {
    id = cases.Retain(std::move(c));
  } else {
    id = c.id;
    cases.Insert(std::move(c));
  }
  Emit(0, AuditKind::kRetention, "", json{{"case_id", id}, {"imported", true}}.dump());
  state_.cases = std::move(cases);
  return id;
}

void Engine::AddScenario(ControlScenario s) { state_.catalog.Add(std::move(s)); }

void Engine::UpdateScenario(ControlScenario s) { state_.catalog.Update(std::move(s)); }

}  // namespace cplan::workflow
