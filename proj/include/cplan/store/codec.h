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

#ifndef CPLAN_STORE_CODEC_H_
#define CPLAN_STORE_CODEC_H_

#include <string>

#include "cplan/cbr/case.h"
#include "cplan/cbr/case_base.h"
#include "cplan/cbr/revision.h"
#include "cplan/mcdm/capacity.h"
#include "cplan/mcdm/choquet.h"
#include "cplan/workflow/engine.h"
#include "cplan/workflow/session.h"
#include "json.hpp"

// JSON encoding of the domain types. Field names are part of the public
// contract; docs/schemas/ describes them. Decoders enforce each type's
// invariants and throw an Error whose message starts with the JSON path of
// the offending value: kValidationFailed for malformed input, or the domain
// code (kDomainError, kShapeError, kUnknownCriterion) of the violated rule.
namespace cplan::store {

using nlohmann::json;

json ToJson(const cbr::QualitySituation& s);
json ToJson(const cbr::Objectives& o);
json ToJson(const cbr::CaseContext& c);
json ToJson(const cbr::Case& c);
json ToJson(const cbr::Recommendation& r);
json ToJson(const workflow::EngineConfig& c);
json ToJson(const workflow::ControlScenario& s);
json ToJson(const mcdm::PairwiseMatrix& m);
json ToJson(const mcdm::Capacity& c);
json ToJson(const mcdm::EvaluationTable& t);
json ToJson(const std::vector<mcdm::ScoredAlternative>& ranking);
json ToJson(const workflow::ManualEvaluation& e);
json ToJson(const workflow::CloseOutcome& o);
json ToJson(const workflow::Session& s);
json ToJson(const workflow::AuditEvent& e);

cbr::QualitySituation SituationFromJson(const json& j, const std::string& path = "");
cbr::Objectives ObjectivesFromJson(const json& j, const std::string& path = "objectives");
cbr::CaseContext ContextFromJson(const json& j, const std::string& path = "context");
cbr::Case CaseFromJson(const json& j, const std::string& path = "case");
cbr::Recommendation RecommendationFromJson(const json& j, const std::string& path);
workflow::EngineConfig ConfigFromJson(const json& j, const std::string& path = "config");
workflow::ControlScenario ScenarioFromJson(const json& j, const std::string& path = "scenario");
mcdm::PairwiseMatrix MatrixFromJson(const json& j, const std::string& path,
                                    const std::string& subject = "");
// Accepts {"criteria": [...], "values": {...}} or {"criteria": [...],
// "mobius": {...}}. Subset keys are "A+B" labels. In "values", the empty
// and full sets may be omitted (0 and 1); in "mobius", omitted masses are 0.
mcdm::Capacity CapacityFromJson(const json& j, const std::string& path = "capacity");
mcdm::EvaluationTable TableFromJson(const json& j, const std::string& path = "table");
workflow::ManualEvaluation ManualEvaluationFromJson(const json& j, const std::string& path);
workflow::CloseOutcome CloseOutcomeFromJson(const json& j, const std::string& path);
workflow::Session SessionFromJson(const json& j, const std::string& path = "session");
workflow::AuditEvent AuditEventFromJson(const json& j, const std::string& path = "event");

}  // namespace cplan::store

#endif  // CPLAN_STORE_CODEC_H_
