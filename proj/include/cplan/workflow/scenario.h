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

#ifndef CPLAN_WORKFLOW_SCENARIO_H_
#define CPLAN_WORKFLOW_SCENARIO_H_

#include <map>
#include <string>
#include <vector>

namespace cplan::workflow {

// A candidate quality-control policy, e.g. sampling control by measure.
struct ControlScenario {
  std::string id;  // "S2"
  std::string name;
  std::string description;
  std::map<std::string, std::string> parameters;  // sampling-plan settings, free-form

  friend bool operator==(const ControlScenario&, const ControlScenario&) = default;
};

class ScenarioCatalog {
 public:
  ScenarioCatalog() = default;

  // S1..S4 with the two documented names; the other two are placeholders
  // meant to be edited.
  static ScenarioCatalog Default();

  const std::vector<ControlScenario>& scenarios() const { return scenarios_; }
  std::vector<std::string> ids() const;
  const ControlScenario* Find(const std::string& id) const;
  bool Contains(const std::string& id) const { return Find(id) != nullptr; }

  // Throws Error(kValidationFailed) on an empty id or name, or a duplicate id.
  void Add(ControlScenario s);
  // Replaces an existing entry. Throws Error(kNotFound) or
  // Error(kValidationFailed).
  void Update(ControlScenario s);

  friend bool operator==(const ScenarioCatalog&, const ScenarioCatalog&) = default;

 private:
  std::vector<ControlScenario> scenarios_;
};

}  // namespace cplan::workflow

#endif  // CPLAN_WORKFLOW_SCENARIO_H_
