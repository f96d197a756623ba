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

#ifndef CPLAN_CBR_CASE_BASE_H_
#define CPLAN_CBR_CASE_BASE_H_

#include <array>
#include <optional>
#include <vector>

#include "cplan/cbr/case.h"

namespace cplan::cbr {

// Retrieval metric and acceptance threshold. With the defaults (p = 1, unit
// weights) the distance is the plain sum of absolute indicator differences.
struct RetrievalConfig {
  double threshold = 10.0;
  double order_p = 1.0;
  std::array<double, 4> attribute_weights = {1.0, 1.0, 1.0, 1.0};  // cp, cpk, ncr, encr

  friend bool operator==(const RetrievalConfig&, const RetrievalConfig&) = default;
};

std::vector<FieldViolation> ValidateConfig(const RetrievalConfig& cfg);

// Weighted Minkowski distance (sum_k w_k |a_k - b_k|^p)^(1/p). Smaller means
// more similar; the UI shows it as the "similarity level".
double Distance(const QualitySituation& a, const QualitySituation& b, const RetrievalConfig& cfg);

struct RetrievalResult {
  CaseId case_id = 0;
  double distance = 0.0;

  friend bool operator==(const RetrievalResult&, const RetrievalResult&) = default;
};

// Solution proposed for a target case, with a link back to its source.
struct Recommendation {
  std::string scenario_id;
  double distance = 0.0;
  CaseId source_case_id = 0;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

// Retained cases in retention order. Ids strictly increase; stored cases are
// never modified. Single writer, many readers.
class CaseBase {
 public:
  CaseBase() = default;

  const std::vector<Case>& cases() const { return cases_; }
  std::size_t size() const { return cases_.size(); }
  bool empty() const { return cases_.empty(); }
  const Case* Find(CaseId id) const;
  CaseId next_id() const { return cases_.empty() ? 1 : cases_.back().id + 1; }

  // Appends a closed case with id max + 1 and returns it. Throws
  // Error(kPreconditionFailed) when status is provisional and
  // Error(kStorageIntegrity) when the case carries an id already stored.
  CaseId Retain(Case c);

  // Appends a case with its own id (loading, import). Throws
  // Error(kStorageIntegrity) unless the id exceeds every stored id, and
  // Error(kValidationFailed) when the case breaks its invariants.
  void Insert(Case c);

  friend bool operator==(const CaseBase&, const CaseBase&) = default;

 private:
  std::vector<Case> cases_;
};

// Nearest satisfactory case strictly closer than cfg.threshold. Equal
// distances go to the most recently retained (largest id) case.
std::optional<RetrievalResult> Retrieve(const QualitySituation& target, const CaseBase& base,
                                        const RetrievalConfig& cfg);

// Reuses the source case's scenario unchanged. Throws Error(kInternal) when
// the result points at a case the base does not hold.
Recommendation Adapt(const RetrievalResult& r, const CaseBase& base);

}  // namespace cplan::cbr

#endif  // CPLAN_CBR_CASE_BASE_H_
