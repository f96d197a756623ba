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

#ifndef CPLAN_MCDM_CHOQUET_H_
#define CPLAN_MCDM_CHOQUET_H_

#include <span>
#include <string>
#include <vector>

#include "cplan/mcdm/capacity.h"
#include "cplan/mcdm/criteria.h"

namespace cplan::mcdm {

// Discrete Choquet integral of per-criterion values in [0,1].
// Values are sorted ascending (ties by criterion order) and the increments
// x(i) - x(i-1) are weighted by the capacity of {criteria with value >= x(i)}.
// Throws Error(kShapeError) on a size mismatch and Error(kDomainError) for
// values outside [0,1].
double Choquet(std::span<const double> values, const Capacity& cap);

// k alternatives x n criteria table of local priorities. Each column is the
// priority vector of the alternatives under one criterion.
class EvaluationTable {
 public:
  static constexpr double kColumnTolerance = 1e-6;

  // Throws Error(kShapeError) on ragged rows or id/row count mismatch and
  // Error(kValidationFailed) for entries outside [0,1], duplicate ids, or a
  // column whose sum is off 1 by more than `column_tolerance`.
  EvaluationTable(CriteriaSet criteria, std::vector<std::string> alternatives,
                  std::vector<std::vector<double>> rows,
                  double column_tolerance = kColumnTolerance);

  const CriteriaSet& criteria() const { return criteria_; }
  const std::vector<std::string>& alternatives() const { return alternatives_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t num_alternatives() const { return rows_.size(); }
  std::vector<double> ColumnSums() const;

  friend bool operator==(const EvaluationTable&, const EvaluationTable&) = default;

 private:
  CriteriaSet criteria_;
  std::vector<std::string> alternatives_;
  std::vector<std::vector<double>> rows_;
};

// Column violations of the stochasticity invariant at `tolerance`; empty when
// every column sums to 1.
std::vector<std::string> ValidateColumns(const std::vector<std::vector<double>>& rows,
                                         std::size_t num_criteria, double tolerance);

struct ScoredAlternative {
  std::string id;
  double score = 0.0;
  int rank = 0;  // 1-based

  friend bool operator==(const ScoredAlternative&, const ScoredAlternative&) = default;
};

// Natural ordering of alternative ids ("S2" < "S10"); digit runs compare by
// value, everything else byte-wise.
bool IdLess(const std::string& a, const std::string& b);

// Choquet score per row, returned in table row order with 1-based ranks
// assigned by descending score. Exactly equal scores rank by id ascending.
// Throws Error(kShapeError) when table and capacity criteria differ.
std::vector<ScoredAlternative> RankAlternatives(const EvaluationTable& table, const Capacity& cap);

// Same ranking rule over precomputed scores.
std::vector<ScoredAlternative> RankScores(const std::vector<std::string>& ids,
                                          const std::vector<double>& scores);

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_CHOQUET_H_
