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

#include "cplan/workflow/scenario.h"

#include "cplan/error.h"

namespace cplan::workflow {

namespace {

void CheckScenario(const ControlScenario& s) {
  std::vector<FieldViolation> v;
  if (s.id.empty()) v.push_back({"id", "must not be empty"});
  if (s.name.empty()) v.push_back({"name", "must not be empty"});
  if (!v.empty()) {
    const std::string message = "invalid control scenario: " + v[0].field + " " + v[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(v));
  }
}

}  // namespace

ScenarioCatalog ScenarioCatalog::Default() {
  ScenarioCatalog c;
  c.Add({"S1",
         "S1 (name unspecified in source)",
         "Placeholder; rename to the plant's scenario.",
         {}});
  c.Add({"S2",
         "Sampling control by measure (simple plan)",
         "Single sampling plan, variables inspection.",
         {{"plan", "simple"}}});
  c.Add({"S3",
         "Sampling control by measure (double plan)",
         "Double sampling plan, variables inspection.",
         {{"plan", "double"}}});
  c.Add({"S4",
         "S4 (name unspecified in source)",
         "Placeholder; rename to the plant's scenario.",
         {}});
  return c;
}

std::vector<std::string> ScenarioCatalog::ids() const {
  std::vector<std::string> out;
  for (const auto& s : scenarios_) out.push_back(s.id);
  return out;
}

const ControlScenario* ScenarioCatalog::Find(const std::string& id) const {
  for (const auto& s : scenarios_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

void ScenarioCatalog::Add(ControlScenario s) {
  CheckScenario(s);
  if (Contains(s.id)) {
    throw Error(ErrorCode::kValidationFailed, "scenario id '" + s.id + "' already exists",
                {{"id", "duplicate"}});
  }
  scenarios_.push_back(std::move(s));
}

void ScenarioCatalog::Update(ControlScenario s) {
  CheckScenario(s);
  for (auto& existing : scenarios_) {
    if (existing.id == s.id) {
      existing = std::move(s);
      return;
    }
  }
  throw Error(ErrorCode::kNotFound, "unknown scenario '" + s.id + "'");
}

}  // namespace cplan::workflow
