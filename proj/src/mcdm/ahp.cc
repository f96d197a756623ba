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

#include "cplan/mcdm/ahp.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "cplan/error.h"

namespace cplan::mcdm {

PairwiseMatrix::PairwiseMatrix(const std::vector<std::vector<double>>& rows, std::string subject)
    : n_(rows.size()), subject_(std::move(subject)) {
  if (n_ == 0) throw Error(ErrorCode::kShapeError, "pairwise matrix is empty");
  a_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw Error(ErrorCode::kShapeError,
                  "pairwise matrix is not square: row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n_));
    }
    a_.insert(a_.end(), rows[i].begin(), rows[i].end());
  }
}

PairwiseMatrix PairwiseMatrix::FromWeights(std::span<const double> weights, std::string subject) {
  std::vector<std::vector<double>> rows(weights.size(), std::vector<double>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t j = 0; j < weights.size(); ++j) {
      rows[i][j] = i == j ? 1.0 : weights[i] / weights[j];
    }
  }
  return PairwiseMatrix(rows, std::move(subject));
}

std::vector<std::vector<double>> PairwiseMatrix::Rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    rows[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
  }
  return rows;
}

namespace {

std::string Pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

std::vector<PairwiseViolation> ValidatePairwise(const PairwiseMatrix& m) {
  std::vector<PairwiseViolation> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!(v > 0.0) || !std::isfinite(v)) {
        out.push_back({PairwiseViolation::Kind::kPositivity, i, j,
                       "entry " + Pos(i, j) + " must be a positive finite number"});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i) - 1.0) > kReciprocityTolerance) {
      out.push_back({PairwiseViolation::Kind::kDiagonal, i, i,
                     "diagonal entry " + Pos(i, i) + " must equal 1"});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double prod = m(i, j) * m(j, i);
      if (!(std::abs(prod - 1.0) <= kReciprocityTolerance)) {
        out.push_back({PairwiseViolation::Kind::kReciprocity, i, j,
                       "entries " + Pos(i, j) + " and " + Pos(j, i) + " are not reciprocal"});
      }
    }
  }
  return out;
}

PriorityVector::PriorityVector(std::vector<double> weights) : w_(std::move(weights)) {
  double sum = 0.0;
  for (double w : w_) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::kValidationFailed, "priority weights must be non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kValidationFailed,
                "priority weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

namespace {

void RequireValid(const PairwiseMatrix& m) {
  auto violations = ValidatePairwise(m);
  if (violations.empty()) return;
  std::vector<FieldViolation> details;
  for (const auto& v : violations) {
    details.push_back({m.subject().empty() ? "matrix" : m.subject(), v.message});
  }
  throw Error(ErrorCode::kValidationFailed, "invalid pairwise matrix: " + violations[0].message,
              std::move(details));
}

std::vector<double> Multiply(const PairwiseMatrix& m, const std::vector<double>& x) {
  const std::size_t n = m.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) y[i] += m(i, j) * x[j];
  }
  return y;
}

void NormalizeSum(std::vector<double>& x) {
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= sum;
}

double EstimateLambda(const PairwiseMatrix& m, const std::vector<double>& w) {
  const auto aw = Multiply(m, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += aw[i] / w[i];
  return acc / static_cast<double>(w.size());
}

}  // namespace

PriorityVector GeometricMeanPriorities(const PairwiseMatrix& m) {
  RequireValid(m);
  const std::size_t n = m.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(m(i, j));
    w[i] = std::exp(log_sum / static_cast<double>(n));
  }
  NormalizeSum(w);
  return PriorityVector(std::move(w));
}

PriorityResult ComputePriorities(const PairwiseMatrix& m, const PowerIterationOptions& opts) {
  RequireValid(m);
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  PriorityResult result;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    auto next = Multiply(m, x);
    NormalizeSum(next);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(next[i] - x[i]));
    x = std::move(next);
    if (change < opts.tolerance) {
      result.iterations = it;
      result.lambda_max = EstimateLambda(m, x);
      result.weights = PriorityVector(std::move(x));
      return result;
    }
  }
  result.iterations = opts.max_iterations;
  result.used_geometric_fallback = true;
  result.weights = GeometricMeanPriorities(m);
  result.lambda_max = EstimateLambda(m, result.weights.values());
  return result;
}

double RandomIndex(std::size_t n) {
  static constexpr std::array<double, 9> kRandomIndex = {0.0,  0.0,  0.58, 0.90, 1.12,
                                                         1.24, 1.32, 1.41, 1.45};
  if (n == 0 || n > kRandomIndex.size()) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "random index is tabulated for n = 1..9 only (got " + std::to_string(n) + ")");
  }
  return kRandomIndex[n - 1];
}

double ConsistencyRatio(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  const double ri = RandomIndex(n);
  RequireValid(m);
  if (n <= 2) return 0.0;
  const double lambda = ComputePriorities(m).lambda_max;
  const double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
  return std::max(0.0, ci / ri);
}

bool OnSaatyScale(const PairwiseMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double v = m(i, j);
      if (!(v > 0.0)) return false;
      const double r = v >= 1.0 ? v : 1.0 / v;
      const double k = std::round(r);
      if (k < 1.0 || k > 9.0 || std::abs(r - k) > 1e-6 * k) return false;
    }
  }
  return true;
}

}  // namespace cplan::mcdm
