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

#ifndef CPLAN_API_SERVICE_H_
#define CPLAN_API_SERVICE_H_

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cplan/error.h"
#include "cplan/store/codec.h"
#include "cplan/store/store.h"
#include "cplan/workflow/engine.h"

namespace cplan::api {

using nlohmann::json;

struct Response {
  int status = 200;
  json body;
};

struct ServiceOptions {
  // When set, every request except GET /api/health must carry
  // "Authorization: Bearer <token>".
  std::optional<std::string> token;
  workflow::Engine::Clock clock;
};

// HTTP status for each error code.
int HttpStatus(ErrorCode code);
// {"code": ..., "message": ..., "details": [{"field", "message"}...]}
json ErrorBody(const Error& e);

// Operations a client may invoke on a session in `state`, by endpoint name
// ("situation", "decision", "manual", ...).
std::vector<std::string> LegalActions(workflow::SessionState state);

// The JSON service behind /api. Transport-independent: the HTTP server and
// the replay runner both call Handle.
//
// Mutations run against a copy of the engine. The copy replaces the live
// engine only after its audit events are appended and its state is saved, so
// a failed request leaves neither memory nor disk changed. The saved state is
// authoritative; the audit log may hold events of a request whose save
// failed.
class Service {
 public:
  // In-memory service, nothing is persisted.
  explicit Service(workflow::SystemState state = {}, ServiceOptions options = {});
  // Persistent service over an opened store; loads its state.
  explicit Service(std::unique_ptr<store::FileStore> store, ServiceOptions options = {});

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // `target` is a path with an optional query string.
  Response Handle(const std::string& method, const std::string& target,
                  const std::string& body = "", const std::string& authorization = "");

  // Warnings produced when the store was loaded.
  const std::vector<std::string>& warnings() const { return warnings_; }
  workflow::SystemState Snapshot() const;

 private:
  struct Request;
  Response Route(const Request& req);
  template <typename Op>
  json Mutate(Op&& op);
  std::vector<workflow::AuditEvent> Audit(workflow::SessionId id) const;

  Response CreateSession(const Request& req);
  Response ListSessions() const;
  Response GetSession(workflow::SessionId id) const;
  Response SessionAction(workflow::SessionId id, const std::string& action, const Request& req);
  Response ListCases(const Request& req) const;
  Response ImportCase(const Request& req);
  Response PutConfig(const Request& req);
  Response PostScenario(const Request& req);
  Response PutScenario(const Request& req, const std::string& id);
  Response Health() const;

  ServiceOptions options_;
  std::unique_ptr<store::FileStore> store_;
  std::unique_ptr<workflow::Engine> engine_;
  std::vector<workflow::AuditEvent> memory_audit_;
  std::vector<std::string> warnings_;
  mutable std::shared_mutex mutex_;
};

}  // namespace cplan::api

#endif  // CPLAN_API_SERVICE_H_
