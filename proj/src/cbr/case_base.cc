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

#include "cplan/cbr/case_base.h"

#include <algorithm>
#include <cmath>

namespace cplan::cbr {

std::vector<FieldViolation> ValidateConfig(const RetrievalConfig& cfg) {
  std::vector<FieldViolation> out;
  if (!(cfg.threshold >= 0.0) || !std::isfinite(cfg.threshold)) {
    out.push_back({"threshold", "must be a non-negative number"});
  }
  if (!(cfg.order_p >= 1.0) || !std::isfinite(cfg.order_p)) {
    out.push_back({"order_p", "must be >= 1"});
  }
  bool any_positive = false;
  for (double w : cfg.attribute_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      out.push_back({"attribute_weights", "weights must be non-negative"});
      break;
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) out.push_back({"attribute_weights", "at least one weight must be positive"});
  return out;
}

double Distance(const QualitySituation& a, const QualitySituation& b, const RetrievalConfig& cfg) {
  const auto x = a.AsArray();
  const auto y = b.AsArray();
  double acc = 0.0;
  if (cfg.order_p == 1.0) {
    for (std::size_t k = 0; k < 4; ++k) acc += cfg.attribute_weights[k] * std::abs(x[k] - y[k]);
    return acc;
  }
  for (std::size_t k = 0; k < 4; ++k) {
    acc += cfg.attribute_weights[k] * std::pow(std::abs(x[k] - y[k]), cfg.order_p);
  }
  return std::pow(acc, 1.0 / cfg.order_p);
}

const Case* CaseBase::Find(CaseId id) const {
  auto it = std::lower_bound(cases_.begin(), cases_.end(), id,
                             [](const Case& c, CaseId v) { return c.id < v; });
  return it != cases_.end() && it->id == id ? &*it : nullptr;
}

CaseId CaseBase::Retain(Case c) {
  if (c.status == CaseStatus::kProvisional) {
    throw Error(ErrorCode::kPreconditionFailed,
                "only satisfactory or failed cases can be retained");
  }
  if (c.id != 0 && Find(c.id) != nullptr) {
    throw Error(ErrorCode::kStorageIntegrity,
                "case id " + std::to_string(c.id) + " already exists");
  }
  c.id = next_id();
  Insert(std::move(c));
  return cases_.back().id;
}

void CaseBase::Insert(Case c) {
  if (!cases_.empty() && c.id <= cases_.back().id) {
    throw Error(ErrorCode::kStorageIntegrity, "case id " + std::to_string(c.id) +
                                                  " does not exceed the last stored id " +
                                                  std::to_string(cases_.back().id));
  }
  auto violations = ValidateCase(c);
  if (!violations.empty()) {
    const std::string message =
        "case " + std::to_string(c.id) + ": " + violations[0].field + " " + violations[0].message;
    throw Error(ErrorCode::kValidationFailed, message, std::move(violations));
  }
  cases_.push_back(std::move(c));
}

std::optional<RetrievalResult> Retrieve(const QualitySituation& target, const CaseBase& base,
                                        const RetrievalConfig& cfg) {
  std::optional<RetrievalResult> best;
  for (const Case& c : base.cases()) {
    if (c.status != CaseStatus::kSatisfactory) continue;
    const double d = Distance(target, c.situation, cfg);
    // Cases are visited in increasing id order, so <= keeps the latest tie.
    if (!best || d <= best->distance) best = RetrievalResult{c.id, d};
  }
  if (best && best->distance < cfg.threshold) return best;
  return std::nullopt;
}

Recommendation Adapt(const RetrievalResult& r, const CaseBase& base) {
  const Case* source = base.Find(r.case_id);
  if (source == nullptr) {
    throw Error(ErrorCode::kInternal,
                "retrieval result refers to missing case " + std::to_string(r.case_id));
  }
  return Recommendation{source->scenario_id, r.distance, source->id};
}

}  // namespace cplan::cbr
