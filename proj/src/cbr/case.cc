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

#include "cplan/cbr/case.h"

#include <cmath>

namespace cplan::cbr {

namespace {

void CheckField(std::vector<FieldViolation>& out, std::string_view prefix, const char* name,
                double v, double lo, double hi) {
  const std::string field = std::string(prefix) + name;
  if (!std::isfinite(v)) {
    out.push_back({field, "must be a finite number"});
  } else if (v < lo) {
    out.push_back({field, "must be >= " + std::to_string(static_cast<int>(lo))});
  } else if (v > hi) {
    out.push_back({field, "must be <= " + std::to_string(static_cast<int>(hi))});
  }
}

constexpr double kUnbounded = HUGE_VAL;

}  // namespace

std::vector<FieldViolation> ValidateSituation(const QualitySituation& s, std::string_view prefix) {
  std::vector<FieldViolation> out;
  CheckField(out, prefix, "cp", s.cp, 0.0, kUnbounded);
  CheckField(out, prefix, "cpk", s.cpk, -kUnbounded, kUnbounded);
  CheckField(out, prefix, "ncr", s.ncr, 0.0, 100.0);
  CheckField(out, prefix, "encr", s.encr, 0.0, 100.0);
  return out;
}

std::vector<FieldViolation> ValidateObjectives(const Objectives& o, std::string_view prefix) {
  std::vector<FieldViolation> out;
  CheckField(out, prefix, "cp", o.cp_target, 0.0, kUnbounded);
  CheckField(out, prefix, "cpk", o.cpk_target, -kUnbounded, kUnbounded);
  CheckField(out, prefix, "ncr", o.ncr_target, 0.0, 100.0);
  CheckField(out, prefix, "encr", o.encr_target, 0.0, 100.0);
  return out;
}

std::vector<std::string> SituationWarnings(const QualitySituation& s) {
  std::vector<std::string> out;
  if (s.cpk > s.cp) out.push_back("cpk exceeds cp; check the entered indices");
  return out;
}

void RequireValid(const QualitySituation& s) {
  auto v = ValidateSituation(s);
  if (!v.empty()) {
    const std::string message = "invalid quality situation: " + v[0].field + " " + v[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(v));
  }
}

void RequireValid(const Objectives& o) {
  auto v = ValidateObjectives(o);
  if (!v.empty()) {
    const std::string message = "invalid objectives: " + v[0].field + " " + v[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(v));
  }
}

std::string_view OriginName(Origin o) { return o == Origin::kManual ? "manual" : "automatic"; }

std::string_view CaseStatusName(CaseStatus s) {
  switch (s) {
    case CaseStatus::kProvisional: return "provisional";
    case CaseStatus::kSatisfactory: return "satisfactory";
    case CaseStatus::kFailed: return "failed";
  }
  return "provisional";
}

std::optional<Origin> ParseOrigin(std::string_view s) {
  if (s == "manual") return Origin::kManual;
  if (s == "automatic") return Origin::kAutomatic;
  return std::nullopt;
}

std::optional<CaseStatus> ParseCaseStatus(std::string_view s) {
  if (s == "provisional") return CaseStatus::kProvisional;
  if (s == "satisfactory") return CaseStatus::kSatisfactory;
  if (s == "failed") return CaseStatus::kFailed;
  return std::nullopt;
}

std::vector<FieldViolation> ValidateCase(const Case& c) {
  auto out = ValidateSituation(c.situation, "situation.");
  for (auto& v : ValidateObjectives(c.objectives)) out.push_back(std::move(v));
  if (c.observed) {
    for (auto& v : ValidateSituation(*c.observed, "observed.")) out.push_back(std::move(v));
  }
  if (c.id <= 0) out.push_back({"id", "must be a positive integer"});
  if (c.scenario_id.empty()) out.push_back({"scenario_id", "must not be empty"});
  if (c.status != CaseStatus::kProvisional && !c.observed) {
    out.push_back({"observed", "a closed case must carry observed results"});
  }
  if (c.retrieval_distance && !(*c.retrieval_distance >= 0.0)) {
    out.push_back({"retrieval_distance", "must be non-negative"});
  }
  return out;
}

}  // namespace cplan::cbr
