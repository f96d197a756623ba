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

#ifndef CPLAN_MCDM_LINEAR_PROGRAM_H_
#define CPLAN_MCDM_LINEAR_PROGRAM_H_

#include <vector>

namespace cplan::mcdm {

// Dense linear program in inequality form:
//   minimize c.x  subject to  A x <= b,  x >= 0.
// Entries of b may be negative.
struct LinearProgram {
  std::vector<double> objective;          // c, one entry per variable
  std::vector<std::vector<double>> rows;  // A
  std::vector<double> bounds;             // b

  // Appends one constraint row; `coefs` is resized to the variable count.
  void AddRow(std::vector<double> coefs, double bound);
};

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
};

// Two-phase tableau simplex with Bland's rule. Meant for the small problems
// produced by capacity fitting (tens of variables and rows).
LpSolution SolveLinearProgram(const LinearProgram& lp);

}  // namespace cplan::mcdm

#endif  // CPLAN_MCDM_LINEAR_PROGRAM_H_
