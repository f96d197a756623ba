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

#include "cplan/store/store.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "cplan/error.h"
#include "cplan/store/codec.h"

namespace cplan::store {

namespace fs = std::filesystem;
using workflow::SystemState;

namespace {

constexpr const char* kCasesFile = "cases.json";
constexpr const char* kScenariosFile = "scenarios.json";
constexpr const char* kConfigFile = "config.json";
constexpr const char* kSessionsFile = "sessions.json";
constexpr const char* kAuditFile = "audit.ndjson";
constexpr const char* kLockFile = ".lock";

[[noreturn]] void Corrupt(const fs::path& file, const std::string& what) {
  const std::string message = file.filename().string() + ": " + what;
  throw Error(ErrorCode::kStorageIntegrity, message, {{file.filename().string(), what}});
}

[[noreturn]] void IoFailure(const fs::path& file, const std::string& what) {
  const std::string message = file.string() + ": " + what + ": " + std::strerror(errno);
  throw Error(ErrorCode::kStorageIo, message);
}

std::optional<std::string> ReadFile(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    if (!fs::exists(file)) return std::nullopt;
    IoFailure(file, "cannot open");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses an envelope and returns its payload, or nullopt if the file is absent.
std::optional<json> ReadDocument(const fs::path& file, const std::string& kind) {
  const auto text = ReadFile(file);
  if (!text) return std::nullopt;
  json doc = json::parse(*text, nullptr, false);
  if (doc.is_discarded()) Corrupt(file, "not valid JSON (truncated or corrupt)");
  if (!doc.is_object()) Corrupt(file, "expected an envelope object");
  auto version = doc.find("schema_version");
  if (version == doc.end() || !version->is_number_integer())
    Corrupt(file, "schema_version missing");
  if (version->get<std::int64_t>() != kSchemaVersion) {
    Corrupt(file, "unsupported schema_version " + version->dump() + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  auto k = doc.find("kind");
  if (k == doc.end() || *k != kind) Corrupt(file, "kind must be \"" + kind + "\"");
  auto payload = doc.find("payload");
  if (payload == doc.end()) Corrupt(file, "payload missing");
  return std::move(*payload);
}

json Envelope(const std::string& kind, json payload) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"payload", std::move(payload)}};
}

// Runs a decoder, turning its validation errors into integrity errors for `file`.
template <typename F>
void Decode(const fs::path& file, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(file.filename().string() + ":", 0) == 0) throw;
    Corrupt(file, e.what());
  } catch (const json::exception& e) {
    Corrupt(file, e.what());
  }
}

void SyncDirectory(const fs::path& dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) IoFailure(dir, "cannot open directory");
  ::fsync(fd);
  ::close(fd);
}

void WriteAll(int fd, const std::string& data, const fs::path& file) {
  std::size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      IoFailure(file, "write failed");
    }
    done += static_cast<std::size_t>(n);
  }
}

void ReplaceFile(const fs::path& file, const std::string& data) {
  const fs::path tmp = file.string() + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) IoFailure(tmp, "cannot create");
  try {
    WriteAll(fd, data, tmp);
    if (::fsync(fd) != 0) IoFailure(tmp, "fsync failed");
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), file.c_str()) != 0) IoFailure(file, "rename failed");
}

}  // namespace

std::vector<std::string> CheckState(const SystemState& state) {
  std::vector<std::string> problems;
  const auto& catalog = state.catalog;
  std::set<std::string> scenario_ids;
  for (const auto& s : catalog.scenarios()) {
    if (!scenario_ids.insert(s.id).second)
      problems.push_back(std::string(kScenariosFile) + ": duplicate scenario id " + s.id);
  }
  cbr::CaseId last = 0;
  for (const auto& c : state.cases.cases()) {
    if (c.id <= last)
      problems.push_back(std::string(kCasesFile) + ": case ids are not strictly increasing at id " +
                         std::to_string(c.id));
    last = c.id;
    if (c.status == cbr::CaseStatus::kProvisional) {
      problems.push_back(std::string(kCasesFile) + ": case " + std::to_string(c.id) +
                         " is provisional");
    }
    if (!catalog.Contains(c.scenario_id)) {
      problems.push_back(std::string(kCasesFile) + ": case " + std::to_string(c.id) +
                         " references unknown scenario " + c.scenario_id);
    }
  }
  for (const auto& v : workflow::ValidateEngineConfig(state.config)) {
    problems.push_back(std::string(kConfigFile) + ": " + v.field + ": " + v.message);
  }
  for (const auto& [id, s] : state.sessions) {
    const std::string tag = std::string(kSessionsFile) + ": session " + std::to_string(id);
    if (id != s.id) problems.push_back(tag + " is stored under a different id");
    if (id <= 0 || id >= state.next_session_id)
      problems.push_back(tag + " is not below next_session_id");
    if (s.selected_scenario && !catalog.Contains(*s.selected_scenario)) {
      problems.push_back(tag + " selects unknown scenario " + *s.selected_scenario);
    }
    if (s.recommendation && !state.cases.Find(s.recommendation->source_case_id)) {
      problems.push_back(tag + " recommendation cites unknown case");
    }
    if (s.outcome && !state.cases.Find(s.outcome->case_id)) {
      problems.push_back(tag + " outcome cites unknown case");
    }
    if (s.predecessor_id && !state.sessions.count(*s.predecessor_id)) {
      problems.push_back(tag + " has an unknown predecessor");
    }
  }
  return problems;
}

FileStore::FileStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kStorageIo, dir_.string() + ": " + ec.message());
  const fs::path lock = dir_ / kLockFile;
  lock_fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (lock_fd_ < 0) IoFailure(lock, "cannot open lock file");
  if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(lock_fd_);
    lock_fd_ = -1;
    throw Error(ErrorCode::kStorageIo,
                dir_.string() + ": data directory is in use by another process");
  }
}

FileStore::~FileStore() {
  if (lock_fd_ >= 0) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
  }
}

LoadResult FileStore::Load() const {
  LoadResult out;
  SystemState& st = out.state;

  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() == ".tmp") {
      out.warnings.push_back("ignored leftover temporary file " + entry.path().filename().string());
    }
  }

  const fs::path scenarios_file = dir_ / kScenariosFile;
  if (auto payload = ReadDocument(scenarios_file, "scenarios")) {
    Decode(scenarios_file, [&] {
      if (!payload->is_array()) Corrupt(scenarios_file, "payload must be an array");
      workflow::ScenarioCatalog catalog;
      for (std::size_t i = 0; i < payload->size(); ++i) {
        catalog.Add(ScenarioFromJson((*payload)[i], "payload[" + std::to_string(i) + "]"));
      }
      st.catalog = std::move(catalog);
    });
  }

  const fs::path config_file = dir_ / kConfigFile;
  if (auto payload = ReadDocument(config_file, "config")) {
    Decode(config_file, [&] { st.config = ConfigFromJson(*payload, "payload"); });
  }

  const fs::path cases_file = dir_ / kCasesFile;
  if (auto payload = ReadDocument(cases_file, "cases")) {
    Decode(cases_file, [&] {
      if (!payload->is_array()) Corrupt(cases_file, "payload must be an array");
      for (std::size_t i = 0; i < payload->size(); ++i) {
        st.cases.Insert(CaseFromJson((*payload)[i], "payload[" + std::to_string(i) + "]"));
      }
    });
  }

  const fs::path sessions_file = dir_ / kSessionsFile;
  if (auto payload = ReadDocument(sessions_file, "sessions")) {
    Decode(sessions_file, [&] {
      if (!payload->is_object()) Corrupt(sessions_file, "payload must be an object");
      auto next = payload->find("next_session_id");
      if (next == payload->end() || !next->is_number_integer()) {
        Corrupt(sessions_file, "next_session_id missing");
      }
      st.next_session_id = next->get<workflow::SessionId>();
      auto list = payload->find("sessions");
      if (list == payload->end() || !list->is_array())
        Corrupt(sessions_file, "sessions must be an array");
      for (std::size_t i = 0; i < list->size(); ++i) {
        auto s = SessionFromJson((*list)[i], "payload.sessions[" + std::to_string(i) + "]");
        const auto id = s.id;
        if (!st.sessions.emplace(id, std::move(s)).second) {
          Corrupt(sessions_file, "duplicate session id " + std::to_string(id));
        }
      }
    });
  }

  const auto problems = CheckState(st);
  if (!problems.empty()) {
    std::vector<FieldViolation> details;
    for (const auto& p : problems) details.push_back({"state", p});
    const std::string message = "inconsistent state: " + problems.front();
    throw Error(ErrorCode::kStorageIntegrity, message, std::move(details));
  }
  return out;
}

void FileStore::Save(const SystemState& state) {
  json scenarios = json::array();
  for (const auto& s : state.catalog.scenarios()) scenarios.push_back(ToJson(s));
  json cases = json::array();
  for (const auto& c : state.cases.cases()) cases.push_back(ToJson(c));
  json sessions = json::array();
  for (const auto& [id, s] : state.sessions) sessions.push_back(ToJson(s));

  // Referenced documents go first so every prefix of this sequence loads.
  ReplaceFile(dir_ / kScenariosFile, Envelope("scenarios", std::move(scenarios)).dump(2) + "\n");
  ReplaceFile(dir_ / kConfigFile, Envelope("config", ToJson(state.config)).dump(2) + "\n");
  ReplaceFile(dir_ / kCasesFile, Envelope("cases", std::move(cases)).dump(2) + "\n");
  ReplaceFile(dir_ / kSessionsFile,
              Envelope("sessions", {{"next_session_id", state.next_session_id},
                                    {"sessions", std::move(sessions)}})
                      .dump(2) +
                  "\n");
  SyncDirectory(dir_);
}

void FileStore::AppendAudit(const std::vector<workflow::AuditEvent>& events) {
  if (events.empty()) return;
  std::string data;
  for (const auto& e : events) data += ToJson(e).dump() + "\n";
  const fs::path file = dir_ / kAuditFile;
  int fd = ::open(file.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) IoFailure(file, "cannot open");
  try {
    WriteAll(fd, data, file);
    if (::fsync(fd) != 0) IoFailure(file, "fsync failed");
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

std::vector<workflow::AuditEvent> FileStore::ReadAudit(
    std::optional<workflow::SessionId> session) const {
  std::vector<workflow::AuditEvent> out;
  const fs::path file = dir_ / kAuditFile;
  std::ifstream in(file);
  if (!in) return out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) Corrupt(file, "line " + std::to_string(number) + " is not valid JSON");
    workflow::AuditEvent e;
    Decode(file, [&] { e = AuditEventFromJson(j, "line " + std::to_string(number)); });
    if (!session || e.session_id == *session) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cplan::store
