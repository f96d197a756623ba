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

#include "cplan/mcdm/choquet.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "cplan/error.h"

namespace cplan::mcdm {

double Choquet(std::span<const double> values, const Capacity& cap) {
  const std::size_t n = cap.size();
  if (values.size() != n) {
    throw Error(ErrorCode::kShapeError, "Choquet integral needs " + std::to_string(n) +
                                            " values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw Error(ErrorCode::kDomainError,
                  "value for criterion '" + cap.criteria().name(i) + "' is outside [0,1]");
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  unsigned upper = cap.full_mask();  // criteria whose value >= current level
  double previous = 0.0;
  double acc = 0.0;
  for (std::size_t idx : order) {
    acc += (values[idx] - previous) * cap[upper];
    previous = values[idx];
    upper &= ~(1u << idx);
  }
  return acc;
}

std::vector<std::string> ValidateColumns(const std::vector<std::vector<double>>& rows,
                                         std::size_t num_criteria, double tolerance) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < num_criteria; ++c) {
    double sum = 0.0;
    for (const auto& row : rows) sum += row[c];
    if (!(std::abs(sum - 1.0) <= tolerance)) {
      out.push_back("column " + std::to_string(c + 1) + " sums to " + std::to_string(sum) +
                    ", expected 1");
    }
  }
  return out;
}

EvaluationTable::EvaluationTable(CriteriaSet criteria, std::vector<std::string> alternatives,
                                 std::vector<std::vector<double>> rows, double column_tolerance)
    : criteria_(std::move(criteria)),
      alternatives_(std::move(alternatives)),
      rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorCode::kShapeError, "evaluation table has no alternatives");
  if (alternatives_.size() != rows_.size()) {
    throw Error(ErrorCode::kShapeError, "evaluation table has " +
                                            std::to_string(alternatives_.size()) + " ids but " +
                                            std::to_string(rows_.size()) + " rows");
  }
  std::set<std::string> seen;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!seen.insert(alternatives_[r]).second) {
      throw Error(ErrorCode::kValidationFailed,
                  "duplicate alternative id '" + alternatives_[r] + "'");
    }
    if (rows_[r].size() != criteria_.size()) {
      throw Error(ErrorCode::kShapeError,
                  "row '" + alternatives_[r] + "' has " + std::to_string(rows_[r].size()) +
                      " values, expected " + std::to_string(criteria_.size()));
    }
    for (double v : rows_[r]) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kValidationFailed,
                    "row '" + alternatives_[r] + "' has a value outside [0,1]");
      }
    }
  }
  auto column_errors = ValidateColumns(rows_, criteria_.size(), column_tolerance);
  if (!column_errors.empty()) {
    std::vector<FieldViolation> details;
    for (auto& e : column_errors) details.push_back({"table", e});
    throw Error(ErrorCode::kValidationFailed, column_errors.front(), std::move(details));
  }
}

std::vector<double> EvaluationTable::ColumnSums() const {
  std::vector<double> sums(criteria_.size(), 0.0);
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) sums[c] += row[c];
  }
  return sums;
}

bool IdLess(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // Strip leading zeros, then compare by length and digits.
      std::size_t is = i;
      std::size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      const int c = a.compare(is, ie - is, b, js, je - js);
      if (c != 0) return c < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

std::vector<ScoredAlternative> RankScores(const std::vector<std::string>& ids,
                                          const std::vector<double>& scores) {
  if (ids.size() != scores.size()) {
    throw Error(ErrorCode::kShapeError, "ids and scores differ in length");
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return IdLess(ids[a], ids[b]);
  });
  std::vector<ScoredAlternative> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out[i] = {ids[i], scores[i], 0};
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]].rank = static_cast<int>(r + 1);
  return out;
}

std::vector<ScoredAlternative> RankAlternatives(const EvaluationTable& table, const Capacity& cap) {
  if (!(table.criteria() == cap.criteria())) {
    throw Error(ErrorCode::kShapeError,
                "evaluation table and capacity are defined over different criteria");
  }
  std::vector<double> scores;
  scores.reserve(table.num_alternatives());
  for (const auto& row : table.rows()) scores.push_back(Choquet(row, cap));
  return RankScores(table.alternatives(), scores);
}

}  // namespace cplan::mcdm
