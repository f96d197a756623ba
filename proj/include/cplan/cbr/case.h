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

#ifndef CPLAN_CBR_CASE_H_
#define CPLAN_CBR_CASE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cplan/error.h"

namespace cplan::cbr {

// Quality state of one (operation, characteristic) pair. Rates are in
// percentage points: 10 means 10 %.
struct QualitySituation {
  double cp = 0.0;    // process capability
  double cpk = 0.0;   // corrected process capability
  double ncr = 0.0;   // internal non-conformity rate
  double encr = 0.0;  // external non-conformity rate

  std::array<double, 4> AsArray() const { return {cp, cpk, ncr, encr}; }
  friend bool operator==(const QualitySituation&, const QualitySituation&) = default;
};

// Targets the DM expects the applied scenario to reach.
struct Objectives {
  double cp_target = 0.0;
  double cpk_target = 0.0;
  double ncr_target = 0.0;
  double encr_target = 0.0;

  friend bool operator==(const Objectives&, const Objectives&) = default;
};

// Hard bound violations (cp < 0, rates outside [0,100], non-finite values).
// `prefix` is prepended to field names in the report.
std::vector<FieldViolation> ValidateSituation(const QualitySituation& s,
                                              std::string_view prefix = "");
std::vector<FieldViolation> ValidateObjectives(const Objectives& o,
                                               std::string_view prefix = "objectives.");
// Soft findings: cpk above cp.
std::vector<std::string> SituationWarnings(const QualitySituation& s);

// Throws Error(kValidationFailed) with the violations as details.
void RequireValid(const QualitySituation& s);
void RequireValid(const Objectives& o);

struct CaseContext {
  std::string operation;       // e.g. "Splitting/Crimping"
  std::string characteristic;  // e.g. "crimping height"

  friend bool operator==(const CaseContext&, const CaseContext&) = default;
};

enum class Origin { kManual, kAutomatic };
enum class CaseStatus { kProvisional, kSatisfactory, kFailed };

std::string_view OriginName(Origin o);
std::string_view CaseStatusName(CaseStatus s);
std::optional<Origin> ParseOrigin(std::string_view s);
std::optional<CaseStatus> ParseCaseStatus(std::string_view s);

using CaseId = std::int64_t;

// Problem (situation) plus solution (control scenario), with the objectives
// set for it and what was observed after applying it.
struct Case {
  CaseId id = 0;
  CaseContext context;
  QualitySituation situation;
  std::string scenario_id;
  Objectives objectives;
  std::optional<QualitySituation> observed;
  Origin origin = Origin::kManual;
  CaseStatus status = CaseStatus::kProvisional;
  std::string created;  // ISO-8601 UTC
  std::string closed;   // empty until the outcome is known
  // For automatic cases: the case whose solution was reused and its
  // retrieval distance.
  std::optional<CaseId> source_case_id;
  std::optional<double> retrieval_distance;

  friend bool operator==(const Case&, const Case&) = default;
};

// Invariants of a single case (bounds, observed present once closed).
std::vector<FieldViolation> ValidateCase(const Case& c);

}  // namespace cplan::cbr

#endif  // CPLAN_CBR_CASE_H_
