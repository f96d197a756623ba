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

#include "cplan/store/codec.h"

#include "cplan/error.h"

namespace cplan::store {

using workflow::SessionState;

namespace {

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kValidationFailed, (path.empty() ? "" : path + ": ") + message,
              {{path, message}});
}

const json& Field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) Fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(Join(path, key), "is required");
  return *it;
}

const json* OptionalField(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

double NumberField(const json& j, const std::string& path, const char* key) {
  return Number(Field(j, path, key), Join(path, key));
}

std::int64_t Integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t IntegerField(const json& j, const std::string& path, const char* key) {
  return Integer(Field(j, path, key), Join(path, key));
}

std::string String(const json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

std::string StringField(const json& j, const std::string& path, const char* key) {
  return String(Field(j, path, key), Join(path, key));
}

std::string OptionalString(const json& j, const std::string& path, const char* key) {
  const json* v = OptionalField(j, key);
  return v ? String(*v, Join(path, key)) : std::string();
}

bool Bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) Fail(path, "expected true or false");
  return j.get<bool>();
}

std::vector<std::string> StringList(const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(String(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Rethrows a library Error with `path` prepended to its message.
template <typename F>
auto At(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw Error(e.code(), path + ": " + e.what(), {{path, e.what()}});
  }
}

mcdm::CriteriaSet CriteriaFromJson(const json& j, const std::string& path) {
  return At(path, [&] { return mcdm::CriteriaSet(StringList(j, path)); });
}

SessionState StateFromJson(const json& j, const std::string& path) {
  auto s = workflow::ParseState(String(j, path));
  if (!s) Fail(path, "unknown session state");
  return *s;
}

}  // namespace

json ToJson(const cbr::QualitySituation& s) {
  return {{"cp", s.cp}, {"cpk", s.cpk}, {"ncr", s.ncr}, {"encr", s.encr}};
}

json ToJson(const cbr::Objectives& o) {
  return {
      {"cp", o.cp_target}, {"cpk", o.cpk_target}, {"ncr", o.ncr_target}, {"encr", o.encr_target}};
}

json ToJson(const cbr::CaseContext& c) {
  return {{"operation", c.operation}, {"characteristic", c.characteristic}};
}

json ToJson(const cbr::Case& c) {
  json j = {{"id", c.id},
            {"context", ToJson(c.context)},
            {"situation", ToJson(c.situation)},
            {"scenario_id", c.scenario_id},
            {"objectives", ToJson(c.objectives)},
            {"observed", c.observed ? ToJson(*c.observed) : json(nullptr)},
            {"origin", cbr::OriginName(c.origin)},
            {"status", cbr::CaseStatusName(c.status)},
            {"created", c.created},
            {"closed", c.closed}};
  if (c.source_case_id) j["source_case_id"] = *c.source_case_id;
  if (c.retrieval_distance) j["retrieval_distance"] = *c.retrieval_distance;
  return j;
}

json ToJson(const cbr::Recommendation& r) {
  return {{"scenario", r.scenario_id}, {"distance", r.distance}, {"source_case", r.source_case_id}};
}

json ToJson(const workflow::EngineConfig& c) {
  const auto& w = c.retrieval.attribute_weights;
  return {{"threshold", c.retrieval.threshold},
          {"order_p", c.retrieval.order_p},
          {"attribute_weights", {{"cp", w[0]}, {"cpk", w[1]}, {"ncr", w[2]}, {"encr", w[3]}}},
          {"repair_delta", c.repair_delta},
          {"cr_threshold", c.cr_threshold},
          {"strict_consistency", c.strict_consistency}};
}

json ToJson(const workflow::ControlScenario& s) {
  return {
      {"id", s.id}, {"name", s.name}, {"description", s.description}, {"parameters", s.parameters}};
}

json ToJson(const mcdm::PairwiseMatrix& m) { return m.Rows(); }

json ToJson(const mcdm::Capacity& c) {
  json values = json::object();
  for (unsigned s = 1; s <= c.full_mask(); ++s) values[c.criteria().SubsetLabel(s)] = c[s];
  return {{"criteria", c.criteria().names()}, {"values", values}};
}

json ToJson(const mcdm::EvaluationTable& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.num_alternatives(); ++r) {
    rows.push_back({{"id", t.alternatives()[r]}, {"values", t.rows()[r]}});
  }
  return {{"criteria", t.criteria().names()}, {"alternatives", rows}};
}

json ToJson(const std::vector<mcdm::ScoredAlternative>& ranking) {
  json out = json::array();
  for (const auto& r : ranking) out.push_back({{"id", r.id}, {"score", r.score}, {"rank", r.rank}});
  return out;
}

json ToJson(const workflow::ManualEvaluation& e) {
  json matrices = json::object();
  for (const auto& [name, m] : e.matrices) matrices[name] = ToJson(m);
  return {{"alternatives", e.alternatives},
          {"matrices", matrices},
          {"consistency_ratios", e.consistency_ratios},
          {"table", ToJson(e.table)},
          {"capacity", ToJson(e.capacity)},
          {"ranking", ToJson(e.ranking)},
          {"best", e.Best()},
          {"warnings", e.warnings}};
}

json ToJson(const workflow::CloseOutcome& o) {
  json j = {{"status", cbr::OutcomeName(o.status)},
            {"case_id", o.case_id},
            {"action", cbr::RevisionKindName(o.action.kind)}};
  if (o.threshold_change) {
    j["threshold_change"] = {{"before", o.threshold_change->before},
                             {"after", o.threshold_change->after}};
  }
  if (o.successor_session_id) j["successor_session_id"] = *o.successor_session_id;
  return j;
}

json ToJson(const workflow::Session& s) {
  json trail = json::array();
  for (const auto& t : s.trail) {
    json tj = {{"from", workflow::StateName(t.from)},
               {"to", workflow::StateName(t.to)},
               {"at", t.at},
               {"note", t.note}};
    if (t.recommendation) tj["recommendation"] = ToJson(*t.recommendation);
    trail.push_back(std::move(tj));
  }
  json prior = json::object();
  for (const auto& [name, m] : s.prior_matrices) prior[name] = ToJson(m);
  json j = {{"id", s.id},
            {"context", ToJson(s.context)},
            {"state", workflow::StateName(s.state)},
            {"situation", s.situation ? ToJson(*s.situation) : json(nullptr)},
            {"objectives", s.objectives ? ToJson(*s.objectives) : json(nullptr)},
            {"recommendation", s.recommendation ? ToJson(*s.recommendation) : json(nullptr)},
            {"manual", s.manual ? ToJson(*s.manual) : json(nullptr)},
            {"prior_matrices", prior},
            {"selected_scenario", s.selected_scenario ? json(*s.selected_scenario) : json(nullptr)},
            {"origin", s.origin ? json(cbr::OriginName(*s.origin)) : json(nullptr)},
            {"period", s.period ? json{{"duration", s.period->duration}, {"basis", s.period->basis}}
                                : json(nullptr)},
            {"observed", s.observed ? ToJson(*s.observed) : json(nullptr)},
            {"warnings", s.warnings},
            {"created", s.created},
            {"applied_at", s.applied_at},
            {"recorded_at", s.recorded_at},
            {"closed_at", s.closed_at},
            {"predecessor_id", s.predecessor_id ? json(*s.predecessor_id) : json(nullptr)},
            {"outcome", s.outcome ? ToJson(*s.outcome) : json(nullptr)},
            {"trail", trail}};
  return j;
}

json ToJson(const workflow::AuditEvent& e) {
  return {{"timestamp", e.timestamp},
          {"session_id", e.session_id},
          {"kind", workflow::AuditKindName(e.kind)},
          {"before", e.before},
          {"after", e.after}};
}

cbr::QualitySituation SituationFromJson(const json& j, const std::string& path) {
  cbr::QualitySituation s{NumberField(j, path, "cp"), NumberField(j, path, "cpk"),
                          NumberField(j, path, "ncr"), NumberField(j, path, "encr")};
  auto violations = cbr::ValidateSituation(s, path.empty() ? "" : path + ".");
  if (!violations.empty()) {
    const std::string message = violations[0].field + ": " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  return s;
}

cbr::Objectives ObjectivesFromJson(const json& j, const std::string& path) {
  cbr::Objectives o{NumberField(j, path, "cp"), NumberField(j, path, "cpk"),
                    NumberField(j, path, "ncr"), NumberField(j, path, "encr")};
  auto violations = cbr::ValidateObjectives(o, path.empty() ? "" : path + ".");
  if (!violations.empty()) {
    const std::string message = violations[0].field + ": " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  return o;
}

cbr::CaseContext ContextFromJson(const json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  return {OptionalString(j, path, "operation"), OptionalString(j, path, "characteristic")};
}

cbr::Case CaseFromJson(const json& j, const std::string& path) {
  cbr::Case c;
  c.id = IntegerField(j, path, "id");
  if (const json* ctx = OptionalField(j, "context"))
    c.context = ContextFromJson(*ctx, Join(path, "context"));
  c.situation = SituationFromJson(Field(j, path, "situation"), Join(path, "situation"));
  c.scenario_id = StringField(j, path, "scenario_id");
  c.objectives = ObjectivesFromJson(Field(j, path, "objectives"), Join(path, "objectives"));
  if (const json* obs = OptionalField(j, "observed")) {
    c.observed = SituationFromJson(*obs, Join(path, "observed"));
  }
  const auto origin = cbr::ParseOrigin(StringField(j, path, "origin"));
  if (!origin) Fail(Join(path, "origin"), "must be 'manual' or 'automatic'");
  c.origin = *origin;
  const auto status = cbr::ParseCaseStatus(StringField(j, path, "status"));
  if (!status) Fail(Join(path, "status"), "must be provisional, satisfactory or failed");
  c.status = *status;
  c.created = OptionalString(j, path, "created");
  c.closed = OptionalString(j, path, "closed");
  if (const json* v = OptionalField(j, "source_case_id")) {
    c.source_case_id = Integer(*v, Join(path, "source_case_id"));
  }
  if (const json* v = OptionalField(j, "retrieval_distance")) {
    c.retrieval_distance = Number(*v, Join(path, "retrieval_distance"));
  }
  auto violations = cbr::ValidateCase(c);
  if (!violations.empty()) Fail(Join(path, violations[0].field), violations[0].message);
  return c;
}

cbr::Recommendation RecommendationFromJson(const json& j, const std::string& path) {
  return {StringField(j, path, "scenario"), NumberField(j, path, "distance"),
          IntegerField(j, path, "source_case")};
}

workflow::EngineConfig ConfigFromJson(const json& j, const std::string& path) {
  workflow::EngineConfig c;
  if (!j.is_object()) Fail(path, "expected an object");
  if (const json* v = OptionalField(j, "threshold"))
    c.retrieval.threshold = Number(*v, Join(path, "threshold"));
  if (const json* v = OptionalField(j, "order_p"))
    c.retrieval.order_p = Number(*v, Join(path, "order_p"));
  if (const json* w = OptionalField(j, "attribute_weights")) {
    const std::string wp = Join(path, "attribute_weights");
    if (w->is_array()) {
      if (w->size() != 4) Fail(wp, "expected four weights");
      for (std::size_t k = 0; k < 4; ++k) c.retrieval.attribute_weights[k] = Number((*w)[k], wp);
    } else {
      const char* keys[] = {"cp", "cpk", "ncr", "encr"};
      for (std::size_t k = 0; k < 4; ++k) {
        if (const json* v = OptionalField(*w, keys[k])) {
          c.retrieval.attribute_weights[k] = Number(*v, Join(wp, keys[k]));
        }
      }
    }
  }
  if (const json* v = OptionalField(j, "repair_delta"))
    c.repair_delta = Number(*v, Join(path, "repair_delta"));
  if (const json* v = OptionalField(j, "cr_threshold"))
    c.cr_threshold = Number(*v, Join(path, "cr_threshold"));
  if (const json* v = OptionalField(j, "strict_consistency")) {
    c.strict_consistency = Bool(*v, Join(path, "strict_consistency"));
  }
  auto violations = workflow::ValidateEngineConfig(c);
  if (!violations.empty()) Fail(Join(path, violations[0].field), violations[0].message);
  return c;
}

workflow::ControlScenario ScenarioFromJson(const json& j, const std::string& path) {
  workflow::ControlScenario s;
  s.id = StringField(j, path, "id");
  s.name = StringField(j, path, "name");
  s.description = OptionalString(j, path, "description");
  if (const json* p = OptionalField(j, "parameters")) {
    if (!p->is_object()) Fail(Join(path, "parameters"), "expected an object");
    for (const auto& [k, v] : p->items()) {
      s.parameters[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  if (s.id.empty()) Fail(Join(path, "id"), "must not be empty");
  if (s.name.empty()) Fail(Join(path, "name"), "must not be empty");
  return s;
}

mcdm::PairwiseMatrix MatrixFromJson(const json& j, const std::string& path,
                                    const std::string& subject) {
  if (!j.is_array()) Fail(path, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) Fail(rp, "expected an array");
    std::vector<double> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      row.push_back(Number(j[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    rows.push_back(std::move(row));
  }
  return At(path, [&] { return mcdm::PairwiseMatrix(rows, subject); });
}

mcdm::Capacity CapacityFromJson(const json& j, const std::string& path) {
  const auto criteria = CriteriaFromJson(Field(j, path, "criteria"), Join(path, "criteria"));
  const unsigned full = (1u << criteria.size()) - 1u;
  if (const json* mobius = OptionalField(j, "mobius")) {
    const std::string mp = Join(path, "mobius");
    if (!mobius->is_object()) Fail(mp, "expected an object keyed by subset");
    std::vector<double> masses(full + 1, 0.0);
    for (const auto& [key, v] : mobius->items()) {
      const unsigned mask = At(Join(mp, key), [&] { return criteria.ParseSubset(key); });
      masses[mask] = Number(v, Join(mp, key));
    }
    return At(mp, [&] { return mcdm::ToCapacity(mcdm::MobiusRepresentation(criteria, masses)); });
  }
  const std::string vp = Join(path, "values");
  const json& values = Field(j, path, "values");
  if (!values.is_object()) Fail(vp, "expected an object keyed by subset");
  std::vector<double> v(full + 1, 0.0);
  std::vector<bool> seen(full + 1, false);
  v[full] = 1.0;
  seen[0] = seen[full] = true;
  for (const auto& [key, val] : values.items()) {
    const unsigned mask = At(Join(vp, key), [&] { return criteria.ParseSubset(key); });
    v[mask] = Number(val, Join(vp, key));
    seen[mask] = true;
  }
  for (unsigned s = 1; s < full; ++s) {
    if (!seen[s]) Fail(Join(vp, criteria.SubsetLabel(s)), "is required");
  }
  return At(vp, [&] { return mcdm::Capacity(criteria, v); });
}

mcdm::EvaluationTable TableFromJson(const json& j, const std::string& path) {
  const auto criteria = CriteriaFromJson(Field(j, path, "criteria"), Join(path, "criteria"));
  const json& alts = Field(j, path, "alternatives");
  const std::string ap = Join(path, "alternatives");
  if (!alts.is_array()) Fail(ap, "expected an array");
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < alts.size(); ++r) {
    const std::string rp = ap + "[" + std::to_string(r) + "]";
    ids.push_back(StringField(alts[r], rp, "id"));
    const json& vals = Field(alts[r], rp, "values");
    if (!vals.is_array()) Fail(Join(rp, "values"), "expected an array");
    std::vector<double> row;
    for (std::size_t c = 0; c < vals.size(); ++c)
      row.push_back(Number(vals[c], Join(rp, "values")));
    rows.push_back(std::move(row));
  }
  return At(path, [&] { return mcdm::EvaluationTable(criteria, ids, rows); });
}

workflow::ManualEvaluation ManualEvaluationFromJson(const json& j, const std::string& path) {
  auto alternatives = StringList(Field(j, path, "alternatives"), Join(path, "alternatives"));
  std::map<std::string, mcdm::PairwiseMatrix> matrices;
  const json& mj = Field(j, path, "matrices");
  if (!mj.is_object()) Fail(Join(path, "matrices"), "expected an object");
  for (const auto& [name, m] : mj.items()) {
    matrices.emplace(name, MatrixFromJson(m, Join(Join(path, "matrices"), name), name));
  }
  std::map<std::string, double> ratios;
  if (const json* cr = OptionalField(j, "consistency_ratios")) {
    for (const auto& [name, v] : cr->items())
      ratios[name] = Number(v, Join(path, "consistency_ratios"));
  }
  auto table = TableFromJson(Field(j, path, "table"), Join(path, "table"));
  auto capacity = CapacityFromJson(Field(j, path, "capacity"), Join(path, "capacity"));
  std::vector<mcdm::ScoredAlternative> ranking;
  const json& rj = Field(j, path, "ranking");
  if (!rj.is_array()) Fail(Join(path, "ranking"), "expected an array");
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const std::string rp = Join(path, "ranking") + "[" + std::to_string(i) + "]";
    ranking.push_back({StringField(rj[i], rp, "id"), NumberField(rj[i], rp, "score"),
                       static_cast<int>(IntegerField(rj[i], rp, "rank"))});
  }
  std::vector<std::string> warnings;
  if (const json* w = OptionalField(j, "warnings"))
    warnings = StringList(*w, Join(path, "warnings"));
  if (!(table.criteria() == capacity.criteria())) {
    Fail(path, "table and capacity use different criteria");
  }
  if (ranking.size() != table.num_alternatives()) Fail(Join(path, "ranking"), "size mismatch");
  workflow::ManualEvaluation e{std::move(alternatives), std::move(matrices), std::move(ratios),
                               std::move(table),        std::move(capacity), std::move(ranking),
                               std::move(warnings)};
  At(path, [&] { return e.Best(); });
  return e;
}

workflow::CloseOutcome CloseOutcomeFromJson(const json& j, const std::string& path) {
  workflow::CloseOutcome o;
  const std::string status = StringField(j, path, "status");
  if (status == "satisfactory") {
    o.status = cbr::Outcome::kSatisfactory;
  } else if (status == "unsatisfactory") {
    o.status = cbr::Outcome::kUnsatisfactory;
  } else {
    Fail(Join(path, "status"), "must be satisfactory or unsatisfactory");
  }
  o.case_id = IntegerField(j, path, "case_id");
  const std::string action = StringField(j, path, "action");
  using K = cbr::RevisionAction::Kind;
  bool known = false;
  for (auto k : {K::kRetainSatisfactory, K::kRepairManual, K::kRepairThreshold}) {
    if (cbr::RevisionKindName(k) == action) {
      o.action.kind = k;
      known = true;
    }
  }
  if (!known) Fail(Join(path, "action"), "unknown revision action");
  if (const json* t = OptionalField(j, "threshold_change")) {
    const std::string tp = Join(path, "threshold_change");
    o.threshold_change =
        workflow::ThresholdChange{NumberField(*t, tp, "before"), NumberField(*t, tp, "after")};
    o.action.new_threshold = o.threshold_change->after;
  }
  if (const json* v = OptionalField(j, "successor_session_id")) {
    o.successor_session_id = Integer(*v, Join(path, "successor_session_id"));
  }
  return o;
}

workflow::Session SessionFromJson(const json& j, const std::string& path) {
  workflow::Session s;
  s.id = IntegerField(j, path, "id");
  if (const json* v = OptionalField(j, "context"))
    s.context = ContextFromJson(*v, Join(path, "context"));
  s.state = StateFromJson(Field(j, path, "state"), Join(path, "state"));
  if (const json* v = OptionalField(j, "situation"))
    s.situation = SituationFromJson(*v, Join(path, "situation"));
  if (const json* v = OptionalField(j, "objectives"))
    s.objectives = ObjectivesFromJson(*v, Join(path, "objectives"));
  if (const json* v = OptionalField(j, "recommendation")) {
    s.recommendation = RecommendationFromJson(*v, Join(path, "recommendation"));
  }
  if (const json* v = OptionalField(j, "manual"))
    s.manual = ManualEvaluationFromJson(*v, Join(path, "manual"));
  if (const json* v = OptionalField(j, "prior_matrices")) {
    for (const auto& [name, m] : v->items()) {
      s.prior_matrices.emplace(name,
                               MatrixFromJson(m, Join(Join(path, "prior_matrices"), name), name));
    }
  }
  if (const json* v = OptionalField(j, "selected_scenario"))
    s.selected_scenario = String(*v, Join(path, "selected_scenario"));
  if (const json* v = OptionalField(j, "origin")) {
    s.origin = cbr::ParseOrigin(String(*v, Join(path, "origin")));
    if (!s.origin) Fail(Join(path, "origin"), "must be 'manual' or 'automatic'");
  }
  if (const json* v = OptionalField(j, "period")) {
    s.period = workflow::AppliedPeriod{OptionalString(*v, Join(path, "period"), "duration"),
                                       OptionalString(*v, Join(path, "period"), "basis")};
  }
  if (const json* v = OptionalField(j, "observed"))
    s.observed = SituationFromJson(*v, Join(path, "observed"));
  if (const json* v = OptionalField(j, "warnings"))
    s.warnings = StringList(*v, Join(path, "warnings"));
  s.created = OptionalString(j, path, "created");
  s.applied_at = OptionalString(j, path, "applied_at");
  s.recorded_at = OptionalString(j, path, "recorded_at");
  s.closed_at = OptionalString(j, path, "closed_at");
  if (const json* v = OptionalField(j, "predecessor_id"))
    s.predecessor_id = Integer(*v, Join(path, "predecessor_id"));
  if (const json* v = OptionalField(j, "outcome"))
    s.outcome = CloseOutcomeFromJson(*v, Join(path, "outcome"));

  const json& trail = Field(j, path, "trail");
  if (!trail.is_array()) Fail(Join(path, "trail"), "expected an array");
  SessionState at = SessionState::kCreated;
  for (std::size_t i = 0; i < trail.size(); ++i) {
    const std::string tp = Join(path, "trail") + "[" + std::to_string(i) + "]";
    workflow::TransitionRecord t{StateFromJson(Field(trail[i], tp, "from"), Join(tp, "from")),
                                 StateFromJson(Field(trail[i], tp, "to"), Join(tp, "to")),
                                 OptionalString(trail[i], tp, "at"),
                                 OptionalString(trail[i], tp, "note"), std::nullopt};
    if (const json* r = OptionalField(trail[i], "recommendation")) {
      t.recommendation = RecommendationFromJson(*r, Join(tp, "recommendation"));
    }
    if (t.from != at || !workflow::IsEdge(t.from, t.to))
      Fail(tp, "transition is not on the session graph");
    at = t.to;
    s.trail.push_back(std::move(t));
  }
  if (at != s.state) Fail(Join(path, "state"), "does not match the end of the trail");

  using S = SessionState;
  const bool past_selection = s.state == S::kScenarioSelected || s.state == S::kApplied ||
                              s.state == S::kResultsRecorded || s.state == S::kClosed;
  if (s.state != S::kCreated && (!s.situation || !s.objectives)) {
    Fail(path, "a session past Created needs a situation and objectives");
  }
  if (s.state == S::kAutoRecommended && !s.recommendation)
    Fail(path, "AutoRecommended without a recommendation");
  if (s.state == S::kManualEvaluated && !s.manual)
    Fail(path, "ManualEvaluated without an evaluation");
  if (past_selection && !s.selected_scenario) Fail(path, "selected scenario missing");
  if ((s.state == S::kResultsRecorded || s.state == S::kClosed) && !s.observed) {
    Fail(path, "observed results missing");
  }
  if (s.state == S::kClosed && !s.outcome) Fail(path, "closed session without an outcome");
  return s;
}

workflow::AuditEvent AuditEventFromJson(const json& j, const std::string& path) {
  const auto kind = workflow::ParseAuditKind(StringField(j, path, "kind"));
  if (!kind) Fail(Join(path, "kind"), "unknown event kind");
  return {StringField(j, path, "timestamp"), IntegerField(j, path, "session_id"), *kind,
          OptionalString(j, path, "before"), OptionalString(j, path, "after")};
}

}  // namespace cplan::store
