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

#include "cplan/mcdm/criteria.h"

#include <set>

#include "cplan/error.h"

namespace cplan::mcdm {

CriteriaSet::CriteriaSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw Error(ErrorCode::kValidationFailed, "criteria set is empty");
  }
  if (names_.size() > kMaxCriteria) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "at most " + std::to_string(kMaxCriteria) + " criteria are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || n.find('+') != std::string::npos) {
      throw Error(ErrorCode::kValidationFailed, "invalid criterion identifier '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::kValidationFailed, "duplicate criterion identifier '" + n + "'");
    }
  }
}

CriteriaSet CriteriaSet::Default() { return CriteriaSet({"Risk", "Cost", "Time"}); }

std::optional<std::size_t> CriteriaSet::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::string CriteriaSet::SubsetLabel(unsigned mask) const {
  if (mask == 0) return "{}";
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (mask & (1u << i)) {
      if (!out.empty()) out += '+';
      out += names_[i];
    }
  }
  return out;
}

unsigned CriteriaSet::ParseSubset(const std::string& label) const {
  if (label.empty() || label == "{}") return 0;
  unsigned mask = 0;
  std::size_t start = 0;
  while (start <= label.size()) {
    const std::size_t end = std::min(label.find('+', start), label.size());
    const std::string part = label.substr(start, end - start);
    const auto idx = IndexOf(part);
    if (!idx) {
      throw Error(ErrorCode::kUnknownCriterion,
                  "unknown criterion '" + part + "' in subset '" + label + "'");
    }
    mask |= 1u << *idx;
    start = end + 1;
  }
  return mask;
}

}  // namespace cplan::mcdm
