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

#ifndef CPLAN_MCDM_CAPACITY_H_
#define CPLAN_MCDM_CAPACITY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cplan/mcdm/ahp.h"
#include "cplan/mcdm/criteria.h"

namespace cplan::mcdm {

// Slack allowed on normalization and monotonicity checks, absorbing the
// rounding left by linear solves and Möbius sums.
inline constexpr double kCapacityTolerance = 1e-9;

// Monotone normalized set function over a CriteriaSet. Subsets are bit masks:
// bit i set means criterion i is a member. values()[mask] is the capacity of
// that subset; there are 2^n entries.
class Capacity {
 public:
  // Throws Error(kDomainError) naming the first violated invariant (and the
  // offending subset pair for monotonicity).
  Capacity(CriteriaSet criteria, std::vector<double> values);

  // Additive capacity from singleton weights (must sum to 1).
  static Capacity Additive(CriteriaSet criteria, std::span<const double> weights);
  // 0 on every proper subset: Choquet reduces to the minimum.
  static Capacity Min(CriteriaSet criteria);
  // 1 on every non-empty subset: Choquet reduces to the maximum.
  static Capacity Max(CriteriaSet criteria);

  const CriteriaSet& criteria() const { return criteria_; }
  std::size_t size() const { return criteria_.size(); }
  unsigned full_mask() const { return (1u << size()) - 1u; }
  double operator[](unsigned mask) const { return values_[mask]; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  CriteriaSet criteria_;
  std::vector<double> values_;
};

// Describes why a set function is not a capacity; empty message means valid.
struct CapacityViolation {
  std::string message;
  unsigned subset = 0;    // offending subset S
  unsigned superset = 0;  // T with S ⊂ T and v(S) > v(T), for monotonicity
};
std::vector<CapacityViolation> CheckCapacity(const CriteriaSet& criteria,
                                             std::span<const double> values);

// Möbius masses m(S) = sum over T ⊆ S of (-1)^{|S\T|} v(T).
class MobiusRepresentation {
 public:
  // Shape-checked only; ToCapacity validates the induced set function.
  MobiusRepresentation(CriteriaSet criteria, std::vector<double> masses);

  const CriteriaSet& criteria() const { return criteria_; }
  double operator[](unsigned mask) const { return masses_[mask]; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  CriteriaSet criteria_;
  std::vector<double> masses_;
};

MobiusRepresentation ToMobius(const Capacity& cap);

// Zeta transform v(S) = sum over T ⊆ S of m(T). Throws Error(kDomainError)
// when the result is not normalized or not monotone.
Capacity ToCapacity(const MobiusRepresentation& mobius);

// Shapley importance indices; they sum to v(N) = 1.
PriorityVector ShapleyValues(const Capacity& cap);

// Shapley interaction index of a pair (positive: synergy, negative:
// redundancy). Throws Error(kUnknownCriterion) for unknown names or i == j.
double InteractionIndex(const Capacity& cap, const std::string& first, const std::string& second);
double InteractionIndex(const Capacity& cap, std::size_t i, std::size_t j);

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_CAPACITY_H_
