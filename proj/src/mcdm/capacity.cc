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

#include "cplan/mcdm/capacity.h"

#include <bit>
#include <cmath>
#include <sstream>

#include "cplan/error.h"

namespace cplan::mcdm {

namespace {

std::string Num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double Factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

void CheckTableSize(const CriteriaSet& criteria, std::size_t got, const char* what) {
  const std::size_t want = std::size_t{1} << criteria.size();
  if (got != want) {
    throw Error(ErrorCode::kShapeError,
                std::string(what) + " needs " + std::to_string(want) + " subset entries for " +
                    std::to_string(criteria.size()) + " criteria, got " + std::to_string(got));
  }
}

}  // namespace

std::vector<CapacityViolation> CheckCapacity(const CriteriaSet& criteria,
                                             std::span<const double> values) {
  std::vector<CapacityViolation> out;
  const unsigned full = (1u << criteria.size()) - 1u;
  for (unsigned s = 0; s <= full; ++s) {
    if (!std::isfinite(values[s])) {
      out.push_back({"capacity of " + criteria.SubsetLabel(s) + " is not finite", s, 0});
      return out;
    }
  }
  if (std::abs(values[0]) > kCapacityTolerance) {
    out.push_back({"capacity of the empty set must be 0, got " + Num(values[0]), 0, 0});
  }
  if (std::abs(values[full] - 1.0) > kCapacityTolerance) {
    out.push_back({"capacity of the full set must be 1, got " + Num(values[full]), full, 0});
  }
  // Checking every covering pair S ⊂ S ∪ {i} is enough for monotonicity.
  for (unsigned s = 0; s <= full; ++s) {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const unsigned bit = 1u << i;
      if (s & bit) continue;
      const unsigned t = s | bit;
      if (values[s] > values[t] + kCapacityTolerance) {
        out.push_back({"capacity is not monotone: v(" + criteria.SubsetLabel(s) +
                           ") = " + Num(values[s]) + " > v(" + criteria.SubsetLabel(t) +
                           ") = " + Num(values[t]),
                       s, t});
      }
    }
  }
  return out;
}

Capacity::Capacity(CriteriaSet criteria, std::vector<double> values)
    : criteria_(std::move(criteria)), values_(std::move(values)) {
  CheckTableSize(criteria_, values_.size(), "capacity");
  const auto violations = CheckCapacity(criteria_, values_);
  if (!violations.empty()) {
    std::vector<FieldViolation> details;
    for (const auto& v : violations) details.push_back({"capacity", v.message});
    throw Error(ErrorCode::kDomainError, violations.front().message, std::move(details));
  }
}

Capacity Capacity::Additive(CriteriaSet criteria, std::span<const double> weights) {
  if (weights.size() != criteria.size()) {
    throw Error(ErrorCode::kShapeError, "additive capacity needs one weight per criterion");
  }
  const unsigned full = (1u << criteria.size()) - 1u;
  std::vector<double> v(full + 1, 0.0);
  for (unsigned s = 1; s <= full; ++s) {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      if (s & (1u << i)) v[s] += weights[i];
    }
  }
  return Capacity(std::move(criteria), std::move(v));
}

Capacity Capacity::Min(CriteriaSet criteria) {
  const unsigned full = (1u << criteria.size()) - 1u;
  std::vector<double> v(full + 1, 0.0);
  v[full] = 1.0;
  return Capacity(std::move(criteria), std::move(v));
}

Capacity Capacity::Max(CriteriaSet criteria) {
  const unsigned full = (1u << criteria.size()) - 1u;
  std::vector<double> v(full + 1, 1.0);
  v[0] = 0.0;
  return Capacity(std::move(criteria), std::move(v));
}

MobiusRepresentation::MobiusRepresentation(CriteriaSet criteria, std::vector<double> masses)
    : criteria_(std::move(criteria)), masses_(std::move(masses)) {
  CheckTableSize(criteria_, masses_.size(), "Möbius representation");
}

MobiusRepresentation ToMobius(const Capacity& cap) {
  const unsigned full = cap.full_mask();
  std::vector<double> m(full + 1, 0.0);
  for (unsigned s = 1; s <= full; ++s) {
    const int size_s = std::popcount(s);
    double acc = 0.0;
    // Enumerate T ⊆ S, including the empty set.
    for (unsigned t = s;; t = (t - 1) & s) {
      const int parity = (size_s - std::popcount(t)) & 1;
      acc += parity ? -cap[t] : cap[t];
      if (t == 0) break;
    }
    m[s] = acc;
  }
  return MobiusRepresentation(cap.criteria(), std::move(m));
}

Capacity ToCapacity(const MobiusRepresentation& mobius) {
  const unsigned full = (1u << mobius.criteria().size()) - 1u;
  if (mobius[0] != 0.0) {
    throw Error(ErrorCode::kDomainError, "Möbius mass of the empty set must be 0");
  }
  std::vector<double> v(full + 1, 0.0);
  for (unsigned s = 1; s <= full; ++s) {
    double acc = 0.0;
    for (unsigned t = s; t != 0; t = (t - 1) & s) acc += mobius[t];
    v[s] = acc;
  }
  return Capacity(mobius.criteria(), std::move(v));
}

PriorityVector ShapleyValues(const Capacity& cap) {
  const std::size_t n = cap.size();
  const unsigned full = cap.full_mask();
  const double n_fact = Factorial(n);
  std::vector<double> phi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned bit = 1u << i;
    for (unsigned s = 0; s <= full; ++s) {
      if (s & bit) continue;
      const std::size_t k = static_cast<std::size_t>(std::popcount(s));
      const double coef = Factorial(k) * Factorial(n - k - 1) / n_fact;
      phi[i] += coef * (cap[s | bit] - cap[s]);
    }
  }
  return PriorityVector(std::move(phi));
}

double InteractionIndex(const Capacity& cap, std::size_t i, std::size_t j) {
  const std::size_t n = cap.size();
  if (i >= n || j >= n || i == j) {
    throw Error(ErrorCode::kUnknownCriterion, "interaction index needs two distinct criteria");
  }
  const unsigned bi = 1u << i;
  const unsigned bj = 1u << j;
  const unsigned full = cap.full_mask();
  const double denom = Factorial(n - 1);
  double acc = 0.0;
  for (unsigned s = 0; s <= full; ++s) {
    if (s & (bi | bj)) continue;
    const std::size_t k = static_cast<std::size_t>(std::popcount(s));
    const double coef = Factorial(k) * Factorial(n - k - 2) / denom;
    acc += coef * (cap[s | bi | bj] - cap[s | bi] - cap[s | bj] + cap[s]);
  }
  return acc;
}

double InteractionIndex(const Capacity& cap, const std::string& first, const std::string& second) {
  const auto i = cap.criteria().IndexOf(first);
  const auto j = cap.criteria().IndexOf(second);
  if (!i) throw Error(ErrorCode::kUnknownCriterion, "unknown criterion '" + first + "'");
  if (!j) throw Error(ErrorCode::kUnknownCriterion, "unknown criterion '" + second + "'");
  return InteractionIndex(cap, *i, *j);
}

}  // namespace cplan::mcdm
