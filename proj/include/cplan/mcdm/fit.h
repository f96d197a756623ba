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

#ifndef CPLAN_MCDM_FIT_H_
#define CPLAN_MCDM_FIT_H_

#include <vector>

#include "cplan/mcdm/capacity.h"
#include "cplan/mcdm/choquet.h"

namespace cplan::mcdm {

struct FitOptions {
  // A fit whose max deviation exceeds this is reported infeasible.
  double tolerance = 0.005;
};

struct FitResult {
  Capacity capacity;
  double max_deviation = 0.0;  // max |Choquet(row) - target|
  std::vector<double> scores;  // Choquet score of each row under `capacity`
  bool feasible = false;       // max_deviation <= tolerance
};

// Finds a monotone normalized capacity minimizing the largest deviation
// between each row's Choquet score and its target. The minimax problem is
// linear in the subset values once each row's sort order is fixed, so it is
// solved exactly as a linear program. Among minimax-optimal capacities the
// one with the smallest total |Möbius mass| on non-singleton subsets is
// returned, so additive ground truths come back additive.
// Throws Error(kShapeError) when targets and rows differ in count and
// Error(kValidationFailed) for targets outside [0,1].
FitResult FitCapacity(const EvaluationTable& table, const std::vector<double>& targets,
                      const FitOptions& opts = {});

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_FIT_H_
