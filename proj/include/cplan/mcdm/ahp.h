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

#ifndef CPLAN_MCDM_AHP_H_
#define CPLAN_MCDM_AHP_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cplan::mcdm {

// Square matrix of pairwise judgment ratios, row-major. Entry (i, j) states
// how strongly item i dominates item j. Construction only checks shape;
// ValidatePairwise reports the AHP invariants.
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  // Throws Error(kShapeError) unless `rows` is square and non-empty.
  explicit PairwiseMatrix(const std::vector<std::vector<double>>& rows, std::string subject = {});

  // Consistent matrix with entries w_i / w_j.
  static PairwiseMatrix FromWeights(std::span<const double> weights, std::string subject = {});

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::string& subject() const { return subject_; }
  std::vector<std::vector<double>> Rows() const;

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
  std::string subject_;
};

struct PairwiseViolation {
  enum class Kind { kDiagonal, kReciprocity, kPositivity };
  Kind kind;
  std::size_t row;  // zero-based
  std::size_t col;
  std::string message;  // uses one-based positions
};

// Tolerance on a_ij * a_ji = 1 and on the unit diagonal.
inline constexpr double kReciprocityTolerance = 1e-9;

// Empty iff the matrix has a unit diagonal, strictly positive entries and
// reciprocal pairs. Reciprocity violations are reported once per pair, at
// the lower-triangle position.
std::vector<PairwiseViolation> ValidatePairwise(const PairwiseMatrix& m);

// Non-negative weights summing to one.
class PriorityVector {
 public:
  PriorityVector() = default;
  // Throws Error(kValidationFailed) on negative components or a sum off 1
  // by more than 1e-9.
  explicit PriorityVector(std::vector<double> weights);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const { return w_; }

  friend bool operator==(const PriorityVector&, const PriorityVector&) = default;

 private:
  std::vector<double> w_;
};

struct PowerIterationOptions {
  double tolerance = 1e-10;  // max-norm change between normalized iterates
  int max_iterations = 10000;
};

struct PriorityResult {
  PriorityVector weights;
  double lambda_max = 0.0;  // principal eigenvalue estimate
  int iterations = 0;
  bool used_geometric_fallback = false;
};

// Principal right eigenvector by power iteration, normalized to sum 1. Falls
// back to the row geometric mean (flagged) when the iteration cap is hit.
// Throws Error(kValidationFailed) when ValidatePairwise reports anything.
PriorityResult ComputePriorities(const PairwiseMatrix& m, const PowerIterationOptions& opts = {});

// Row geometric-mean weights, normalized.
PriorityVector GeometricMeanPriorities(const PairwiseMatrix& m);

// Saaty random index for n = 1..9. Throws Error(kUnsupportedDimension).
double RandomIndex(std::size_t n);

// CR = ((lambda_max - n) / (n - 1)) / RI(n), clamped at 0; zero for n <= 2.
// Throws Error(kUnsupportedDimension) for n > 9.
double ConsistencyRatio(const PairwiseMatrix& m);

inline constexpr double kAcceptableConsistencyRatio = 0.10;

// True when every entry lies on the 1/9..9 Saaty scale (integers 1..9 and
// their reciprocals), within a relative 1e-6.
bool OnSaatyScale(const PairwiseMatrix& m);

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_AHP_H_
