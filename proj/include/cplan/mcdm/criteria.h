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

#ifndef CPLAN_MCDM_CRITERIA_H_
#define CPLAN_MCDM_CRITERIA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cplan::mcdm {

// Upper bound on the number of criteria: the random-index table and the
// 2^n subset tables of a capacity are only defined up to here.
inline constexpr std::size_t kMaxCriteria = 9;

// Ordered, duplicate-free list of criterion identifiers. The position of a
// criterion is its bit in every subset mask used by Capacity.
class CriteriaSet {
 public:
  // Throws Error(kValidationFailed) when empty, oversized, or duplicated.
  explicit CriteriaSet(std::vector<std::string> names);

  // Risk, Cost, Time.
  static CriteriaSet Default();

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> IndexOf(const std::string& name) const;

  // "Risk+Time" style label of a subset mask; "{}" for the empty set.
  std::string SubsetLabel(unsigned mask) const;
  // Inverse of SubsetLabel. Throws Error(kUnknownCriterion).
  unsigned ParseSubset(const std::string& label) const;

  friend bool operator==(const CriteriaSet&, const CriteriaSet&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_CRITERIA_H_
