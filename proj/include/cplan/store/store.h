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

#ifndef CPLAN_STORE_STORE_H_
#define CPLAN_STORE_STORE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cplan/workflow/engine.h"

namespace cplan::store {

inline constexpr int kSchemaVersion = 1;

struct LoadResult {
  workflow::SystemState state;
  std::vector<std::string> warnings;
};

// Checks the cross-document invariants of a loaded state: strictly
// increasing case ids, no provisional cases, every scenario reference
// resolvable, session ids below next_session_id. Returns one message per
// problem, prefixed with the name of the document at fault.
std::vector<std::string> CheckState(const workflow::SystemState& state);

// Persists a SystemState as versioned JSON documents inside one directory:
//
//   cases.json      {"schema_version":1,"kind":"cases","payload":[case...]}
//   scenarios.json  {"schema_version":1,"kind":"scenarios","payload":[scenario...]}
//   config.json     {"schema_version":1,"kind":"config","payload":{...}}
//   sessions.json   {"schema_version":1,"kind":"sessions",
//                    "payload":{"next_session_id":n,"sessions":[session...]}}
//   audit.ndjson    one audit event per line, append-only
//
// Documents are replaced through a temporary file, fsync and rename, so a
// reader sees either the old or the new version. The directory is guarded
// by an advisory lock held for the lifetime of the object.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path dir);
  ~FileStore();
  FileStore(const FileStore&) = delete;
  FileStore& operator=(const FileStore&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  // Missing documents load as their defaults. Anything unreadable throws
  // Error(kStorageIntegrity) naming the file; nothing is returned partially.
  LoadResult Load() const;
  void Save(const workflow::SystemState& state);

  void AppendAudit(const std::vector<workflow::AuditEvent>& events);
  // Events of one session (or all events when `session` is empty), in the
  // order they were appended.
  std::vector<workflow::AuditEvent> ReadAudit(
      std::optional<workflow::SessionId> session = std::nullopt) const;

 private:
  std::filesystem::path dir_;
  int lock_fd_ = -1;
};

}  // namespace cplan::store

#endif  // CPLAN_STORE_STORE_H_
