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

#include "cplan/api/service.h"

#include <cctype>
#include <mutex>
#include <sstream>

#include "cplan/cbr/case_base.h"

namespace cplan::api {

using store::ToJson;
using workflow::Engine;
using workflow::SessionId;
using workflow::SessionState;

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidationFailed: return 400;
    case ErrorCode::kUnauthorized: return 401;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kIllegalTransition:
    case ErrorCode::kPreconditionFailed: return 409;
    case ErrorCode::kDomainError:
    case ErrorCode::kShapeError:
    case ErrorCode::kUnsupportedDimension:
    case ErrorCode::kUnknownCriterion:
    case ErrorCode::kUnknownScenario:
    case ErrorCode::kInconsistentJudgments: return 422;
    case ErrorCode::kStorageIntegrity:
    case ErrorCode::kStorageIo:
    case ErrorCode::kInternal: return 500;
  }
  return 500;
}

json ErrorBody(const Error& e) {
  json details = json::array();
  for (const auto& d : e.details()) details.push_back({{"field", d.field}, {"message", d.message}});
  return {{"code", std::string(ErrorCodeName(e.code()))},
          {"message", e.what()},
          {"details", std::move(details)}};
}

std::vector<std::string> LegalActions(SessionState state) {
  switch (state) {
    case SessionState::kCreated: return {"situation"};
    case SessionState::kSituationEntered: return {"objectives"};
    case SessionState::kAutoRecommended: return {"decision", "objectives"};
    case SessionState::kManualRequired: return {"manual", "objectives"};
    case SessionState::kManualEvaluated: return {"decision", "manual", "selection", "objectives"};
    case SessionState::kScenarioSelected: return {"apply", "objectives"};
    case SessionState::kApplied: return {"results"};
    case SessionState::kResultsRecorded: return {"close"};
    case SessionState::kClosed: return {};
  }
  return {};
}

struct Service::Request {
  std::string method;
  std::vector<std::string> segments;  // path split on '/', without "api"
  std::map<std::string, std::string> query;
  json body;
};

namespace {

[[noreturn]] void Invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::kValidationFailed, field + ": " + message, {{field, message}});
}

[[noreturn]] void NoRoute(const std::string& method, const std::string& path) {
  throw Error(ErrorCode::kNotFound, "no route for " + method + " " + path);
}

std::string PercentDecode(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      out.push_back(static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i] == '+' ? ' ' : s[i]);
    }
  }
  return out;
}

SessionId ParseId(const std::string& text, const std::string& what) {
  SessionId id = 0;
  std::size_t used = 0;
  try {
    id = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) {
    throw Error(ErrorCode::kNotFound, "no " + what + " '" + text + "'");
  }
  return id;
}

double QueryNumber(const std::map<std::string, std::string>& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) Invalid(key, "query parameter is required");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) Invalid(key, "must be a number");
  return v;
}

// Fills in the default criteria and accepts a bare {"mobius": {...}} body.
mcdm::Capacity CapacityFromBody(const json& body) {
  json doc;
  if (auto it = body.find("capacity"); it != body.end()) {
    doc = *it;
  } else if (auto m = body.find("mobius"); m != body.end()) {
    doc = {{"mobius", *m}};
  } else {
    Invalid("capacity", "a capacity or mobius representation is required");
  }
  if (!doc.is_object()) Invalid("capacity", "expected an object");
  if (!doc.contains("criteria")) doc["criteria"] = mcdm::CriteriaSet::Default().names();
  return store::CapacityFromJson(doc, "capacity");
}

json SessionJson(const workflow::Session& s, const std::vector<workflow::AuditEvent>& audit) {
  json j = ToJson(s);
  json events = json::array();
  for (const auto& e : audit) events.push_back(ToJson(e));
  j["audit"] = std::move(events);
  j["actions"] = LegalActions(s.state);
  return j;
}

json CaseWithDistance(const cbr::Case& c, const std::optional<cbr::QualitySituation>& query,
                      const cbr::RetrievalConfig& cfg) {
  json j = ToJson(c);
  if (query) j["distance"] = cbr::Distance(*query, c.situation, cfg);
  return j;
}

}  // namespace

Service::Service(workflow::SystemState state, ServiceOptions options)
    : options_(std::move(options)),
      engine_(std::make_unique<Engine>(std::move(state), options_.clock)) {
  const auto problems = store::CheckState(engine_->state());
  if (!problems.empty()) throw Error(ErrorCode::kStorageIntegrity, problems.front());
}

Service::Service(std::unique_ptr<store::FileStore> store, ServiceOptions options)
    : options_(std::move(options)), store_(std::move(store)) {
  auto loaded = store_->Load();
  warnings_ = std::move(loaded.warnings);
  engine_ = std::make_unique<Engine>(std::move(loaded.state), options_.clock);
}

workflow::SystemState Service::Snapshot() const {
  std::shared_lock lock(mutex_);
  return engine_->state();
}

std::vector<workflow::AuditEvent> Service::Audit(SessionId id) const {
  if (store_) return store_->ReadAudit(id);
  std::vector<workflow::AuditEvent> out;
  for (const auto& e : memory_audit_) {
    if (e.session_id == id) out.push_back(e);
  }
  return out;
}

template <typename Op>
json Service::Mutate(Op&& op) {
  Engine next = *engine_;
  json result = op(next);
  auto events = next.TakeEvents();
  if (store_) {
    store_->AppendAudit(events);
    store_->Save(next.state());
  } else {
    memory_audit_.insert(memory_audit_.end(), events.begin(), events.end());
  }
  *engine_ = std::move(next);
  return result;
}

Response Service::Handle(const std::string& method, const std::string& target,
                         const std::string& body, const std::string& authorization) {
  try {
    Request req;
    req.method = method;
    const auto qpos = target.find('?');
    const std::string path = target.substr(0, qpos);
    if (qpos != std::string::npos) {
      std::istringstream qs(target.substr(qpos + 1));
      std::string pair;
      while (std::getline(qs, pair, '&')) {
        if (pair.empty()) continue;
        const auto eq = pair.find('=');
        req.query[PercentDecode(pair.substr(0, eq))] =
            eq == std::string::npos ? "" : PercentDecode(pair.substr(eq + 1));
      }
    }
    std::istringstream ps(path);
    std::string seg;
    while (std::getline(ps, seg, '/')) {
      if (!seg.empty()) req.segments.push_back(seg);
    }
    if (req.segments.empty() || req.segments[0] != "api") NoRoute(method, path);
    req.segments.erase(req.segments.begin());

    const bool is_health = method == "GET" && req.segments == std::vector<std::string>{"health"};
    if (options_.token && !is_health && authorization != "Bearer " + *options_.token) {
      throw Error(ErrorCode::kUnauthorized, "missing or invalid bearer token");
    }

    if (body.find_first_not_of(" \t\r\n") == std::string::npos) {
      req.body = json::object();
    } else {
      req.body = json::parse(body, nullptr, false);
      if (req.body.is_discarded()) Invalid("body", "not valid JSON");
    }
    return Route(req);
  } catch (const Error& e) {
    return {HttpStatus(e.code()), ErrorBody(e)};
  } catch (const json::exception& e) {
    return {400, ErrorBody(Error(ErrorCode::kValidationFailed, e.what()))};
  } catch (const std::exception& e) {
    return {500, ErrorBody(Error(ErrorCode::kInternal, e.what()))};
  }
}

Response Service::Route(const Request& req) {
  const auto& seg = req.segments;
  const std::string& m = req.method;
  const std::size_t n = seg.size();

  if (n == 1 && seg[0] == "health" && m == "GET") return Health();

  if (n >= 1 && seg[0] == "sessions") {
    if (n == 1 && m == "POST") return CreateSession(req);
    if (n == 1 && m == "GET") return ListSessions();
    if (n == 2 && m == "GET") return GetSession(ParseId(seg[1], "session"));
    if (n == 3 && m == "POST") return SessionAction(ParseId(seg[1], "session"), seg[2], req);
  }
  if (n == 1 && seg[0] == "cases") {
    if (m == "GET") return ListCases(req);
    if (m == "POST") return ImportCase(req);
  }
  if (n == 2 && seg[0] == "cases" && m == "GET") {
    std::shared_lock lock(mutex_);
    const auto id = ParseId(seg[1], "case");
    const cbr::Case* c = engine_->state().cases.Find(id);
    if (!c) throw Error(ErrorCode::kNotFound, "no case " + seg[1]);
    return {200, ToJson(*c)};
  }
  if (n == 1 && seg[0] == "config") {
    if (m == "GET") {
      std::shared_lock lock(mutex_);
      return {200, ToJson(engine_->state().config)};
    }
    if (m == "PUT") return PutConfig(req);
  }
  if (n >= 1 && seg[0] == "scenarios") {
    if (n == 1 && m == "GET") {
      std::shared_lock lock(mutex_);
      json out = json::array();
      for (const auto& s : engine_->state().catalog.scenarios()) out.push_back(ToJson(s));
      return {200, out};
    }
    if (n == 1 && m == "POST") return PostScenario(req);
    if (n == 1 && m == "PUT") return PutScenario(req, "");
    if (n == 2 && m == "PUT") return PutScenario(req, seg[1]);
  }
  std::string full = "/api";
  for (const auto& s : seg) full += "/" + s;
  NoRoute(m, full);
}

Response Service::Health() const {
  std::shared_lock lock(mutex_);
  return {200,
          {{"status", "ok"},
           {"schema_version", store::kSchemaVersion},
           {"persistent", store_ != nullptr},
           {"cases", engine_->state().cases.size()},
           {"sessions", engine_->state().sessions.size()}}};
}

Response Service::CreateSession(const Request& req) {
  std::unique_lock lock(mutex_);
  cbr::CaseContext ctx;
  if (auto it = req.body.find("context"); it != req.body.end()) {
    ctx = store::ContextFromJson(*it);
  }
  json out = Mutate([&](Engine& e) {
    const auto id = e.CreateSession(ctx);
    return SessionJson(e.session(id), {});
  });
  out["audit"] = json::array();
  for (const auto& ev : Audit(out["id"].get<SessionId>())) out["audit"].push_back(ToJson(ev));
  return {201, out};
}

Response Service::ListSessions() const {
  std::shared_lock lock(mutex_);
  json out = json::array();
  for (const auto& [id, s] : engine_->state().sessions) {
    out.push_back(
        {{"id", id},
         {"state", workflow::StateName(s.state)},
         {"created", s.created},
         {"context", ToJson(s.context)},
         {"selected_scenario", s.selected_scenario ? json(*s.selected_scenario) : json(nullptr)}});
  }
  return {200, out};
}

Response Service::GetSession(SessionId id) const {
  std::shared_lock lock(mutex_);
  return {200, SessionJson(engine_->session(id), Audit(id))};
}

Response Service::SessionAction(SessionId id, const std::string& action, const Request& req) {
  std::unique_lock lock(mutex_);
  const json& b = req.body;
  engine_->session(id);  // 404 before any body validation

  if (action == "situation") {
    const auto situation = store::SituationFromJson(b, "");
    const auto objectives = store::ObjectivesFromJson(
        b.contains("objectives") ? b["objectives"] : json(), "objectives");
    std::optional<cbr::CaseContext> ctx;
    if (auto it = b.find("context"); it != b.end() && !it->is_null()) {
      ctx = store::ContextFromJson(*it);
    }
    return {200, Mutate([&](Engine& e) {
              const auto state = e.SubmitSituation(id, situation, objectives, ctx);
              const auto& s = e.session(id);
              json out = {{"state", workflow::StateName(state)},
                          {"warnings", cbr::SituationWarnings(situation)}};
              if (s.recommendation) out["recommendation"] = ToJson(*s.recommendation);
              return out;
            })};
  }
  if (action == "objectives") {
    const auto objectives = store::ObjectivesFromJson(b, "objectives");
    return {200, Mutate([&](Engine& e) {
              e.UpdateObjectives(id, objectives);
              return json{{"state", workflow::StateName(e.session(id).state)},
                          {"objectives", ToJson(objectives)}};
            })};
  }
  if (action == "decision") {
    const auto it = b.find("action");
    if (it == b.end() || !it->is_string()) Invalid("action", "must be \"accept\" or \"reject\"");
    const std::string what = *it;
    if (what != "accept" && what != "reject") Invalid("action", "must be \"accept\" or \"reject\"");
    return {200, Mutate([&](Engine& e) {
              if (what == "accept") {
                e.Accept(id);
              } else {
                e.Reject(id);
              }
              const auto& s = e.session(id);
              json out = {{"state", workflow::StateName(s.state)}};
              if (s.selected_scenario) out["selected_scenario"] = *s.selected_scenario;
              return out;
            })};
  }
  if (action == "manual") {
    const auto& session = engine_->session(id);
    workflow::ManualInput input{{}, {}, std::nullopt, CapacityFromBody(b)};
    if (auto it = b.find("alternatives"); it != b.end() && !it->is_null()) {
      if (!it->is_array()) Invalid("alternatives", "expected an array of scenario ids");
      for (const auto& a : *it) {
        if (!a.is_string()) Invalid("alternatives", "expected an array of scenario ids");
        input.alternatives.push_back(a);
      }
    }
    if (auto it = b.find("table"); it != b.end() && !it->is_null()) {
      json doc = *it;
      if (doc.is_object() && !doc.contains("criteria")) {
        doc["criteria"] = input.capacity.criteria().names();
      }
      input.table = store::TableFromJson(doc, "table");
    } else if (auto mt = b.find("matrices"); mt != b.end() && !mt->is_null()) {
      if (!mt->is_object()) Invalid("matrices", "expected an object keyed by criterion");
      for (const auto& [name, rows] : mt->items()) {
        input.matrices.emplace(name, store::MatrixFromJson(rows, "matrices." + name, name));
      }
    } else {
      input.matrices = session.prior_matrices;
    }
    return {200, Mutate([&](Engine& e) {
              const auto& eval = e.ManualEvaluate(id, input);
              json out = ToJson(eval);
              out["state"] = workflow::StateName(e.session(id).state);
              return out;
            })};
  }
  if (action == "selection") {
    const auto it = b.find("scenario_id");
    if (it == b.end() || !it->is_string()) Invalid("scenario_id", "is required");
    const std::string scenario = *it;
    return {200, Mutate([&](Engine& e) {
              e.ConfirmSelection(id, scenario);
              return json{{"state", workflow::StateName(e.session(id).state)},
                          {"selected_scenario", scenario}};
            })};
  }
  if (action == "apply") {
    workflow::AppliedPeriod period;
    if (auto it = b.find("duration"); it != b.end()) {
      if (!it->is_string()) Invalid("duration", "expected a string");
      period.duration = *it;
    }
    if (auto it = b.find("basis"); it != b.end()) {
      if (!it->is_string()) Invalid("basis", "expected a string");
      period.basis = *it;
    }
    return {200, Mutate([&](Engine& e) {
              e.Apply(id, period);
              return json{{"state", workflow::StateName(e.session(id).state)}};
            })};
  }
  if (action == "results") {
    const auto observed = store::SituationFromJson(b, "observed");
    return {200, Mutate([&](Engine& e) {
              e.RecordResults(id, observed);
              return json{{"state", workflow::StateName(e.session(id).state)},
                          {"observed", ToJson(observed)}};
            })};
  }
  if (action == "close") {
    return {200, Mutate([&](Engine& e) {
              json out = ToJson(e.Close(id));
              out["state"] = workflow::StateName(e.session(id).state);
              return out;
            })};
  }
  NoRoute(req.method, "/api/sessions/" + std::to_string(id) + "/" + action);
}

Response Service::ListCases(const Request& req) const {
  std::optional<cbr::QualitySituation> query;
  if (!req.query.empty()) {
    query = cbr::QualitySituation{QueryNumber(req.query, "cp"), QueryNumber(req.query, "cpk"),
                                  QueryNumber(req.query, "ncr"), QueryNumber(req.query, "encr")};
  }
  std::shared_lock lock(mutex_);
  const auto& st = engine_->state();
  json out = json::array();
  for (const auto& c : st.cases.cases()) {
    out.push_back(CaseWithDistance(c, query, st.config.retrieval));
  }
  return {200, out};
}

Response Service::ImportCase(const Request& req) {
  std::unique_lock lock(mutex_);
  json doc = req.body;
  if (!doc.is_object()) Invalid("case", "expected an object");
  if (!doc.contains("id") || doc["id"] == 0) doc["id"] = engine_->state().cases.next_id();
  if (!doc.contains("origin")) doc["origin"] = "manual";
  const auto c = store::CaseFromJson(doc, "case");
  return {201, Mutate([&](Engine& e) {
            const auto id = e.ImportCase(c);
            return ToJson(*e.state().cases.Find(id));
          })};
}

Response Service::PutConfig(const Request& req) {
  std::unique_lock lock(mutex_);
  if (!req.body.is_object()) Invalid("config", "expected an object");
  json merged = ToJson(engine_->state().config);
  merged.merge_patch(req.body);
  const auto cfg = store::ConfigFromJson(merged, "config");
  return {200, Mutate([&](Engine& e) {
            e.SetConfig(cfg);
            return ToJson(e.state().config);
          })};
}

Response Service::PostScenario(const Request& req) {
  std::unique_lock lock(mutex_);
  auto s = store::ScenarioFromJson(req.body, "scenario");
  return {201, Mutate([&](Engine& e) {
            e.AddScenario(s);
            return ToJson(*e.state().catalog.Find(s.id));
          })};
}

Response Service::PutScenario(const Request& req, const std::string& id) {
  std::unique_lock lock(mutex_);
  json doc = req.body;
  if (!doc.is_object()) Invalid("scenario", "expected an object");
  if (!id.empty()) {
    if (doc.contains("id") && doc["id"] != id) Invalid("scenario.id", "does not match the path");
    doc["id"] = id;
  }
  auto s = store::ScenarioFromJson(doc, "scenario");
  return {200, Mutate([&](Engine& e) {
            e.UpdateScenario(s);
            return ToJson(*e.state().catalog.Find(s.id));
          })};
}

}  // namespace cplan::api
