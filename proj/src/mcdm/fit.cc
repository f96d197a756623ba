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

#include "cplan/mcdm/fit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "cplan/error.h"
#include "cplan/mcdm/linear_program.h"

namespace cplan::mcdm {

namespace {

// Choquet score of one row as an affine function of the free subset values
// (every subset except the empty and the full set).
struct AffineScore {
  double constant = 0.0;
  std::vector<double> coefs;  // indexed by free-variable position
};

AffineScore LinearizeRow(const std::vector<double>& row, unsigned full,
                         const std::vector<int>& var_of_mask, std::size_t num_vars) {
  AffineScore out;
  out.coefs.assign(num_vars, 0.0);
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
  unsigned upper = full;
  double previous = 0.0;
  for (std::size_t idx : order) {
    const double step = row[idx] - previous;
    if (upper == full) {
      out.constant += step;
    } else {
      out.coefs[static_cast<std::size_t>(var_of_mask[upper])] += step;
    }
    previous = row[idx];
    upper &= ~(1u << idx);
  }
  return out;
}

}  // namespace

FitResult FitCapacity(const EvaluationTable& table, const std::vector<double>& targets,
                      const FitOptions& opts) {
  if (targets.size() != table.num_alternatives()) {
    throw Error(ErrorCode::kShapeError, "fit needs one target per alternative");
  }
  for (double t : targets) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kValidationFailed, "fit targets must lie in [0,1]");
    }
  }
  const CriteriaSet& criteria = table.criteria();
  const unsigned full = (1u << criteria.size()) - 1u;

  std::vector<int> var_of_mask(full + 1, -1);
  std::vector<unsigned> mask_of_var;
  for (unsigned s = 1; s < full; ++s) {
    var_of_mask[s] = static_cast<int>(mask_of_var.size());
    mask_of_var.push_back(s);
  }
  const std::size_t num_v = mask_of_var.size();

  std::vector<AffineScore> scores;
  for (const auto& row : table.rows())
    scores.push_back(LinearizeRow(row, full, var_of_mask, num_v));

  // Monotonicity over covering pairs; v(empty) = 0 is the x >= 0 bound.
  auto add_monotonicity = [&](LinearProgram& lp) {
    for (unsigned s = 1; s < full; ++s) {
      for (std::size_t i = 0; i < criteria.size(); ++i) {
        const unsigned bit = 1u << i;
        if (s & bit) continue;
        const unsigned t = s | bit;
        std::vector<double> row(num_v, 0.0);
        row[static_cast<std::size_t>(var_of_mask[s])] = 1.0;
        if (t == full) {
          lp.AddRow(row, 1.0);
        } else {
          row[static_cast<std::size_t>(var_of_mask[t])] = -1.0;
          lp.AddRow(row, 0.0);
        }
      }
    }
  };

  // Stage 1: minimize the max deviation t (last variable).
  LinearProgram minimax;
  minimax.objective.assign(num_v + 1, 0.0);
  minimax.objective[num_v] = 1.0;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    std::vector<double> up = scores[r].coefs;
    up.push_back(-1.0);
    minimax.AddRow(up, targets[r] - scores[r].constant);
    std::vector<double> down(num_v + 1, 0.0);
    for (std::size_t k = 0; k < num_v; ++k) down[k] = -scores[r].coefs[k];
    down[num_v] = -1.0;
    minimax.AddRow(down, scores[r].constant - targets[r]);
  }
  add_monotonicity(minimax);
  const LpSolution stage1 = SolveLinearProgram(minimax);
  if (stage1.status != LpSolution::Status::kOptimal) {
    throw Error(ErrorCode::kInternal, "capacity fit linear program did not solve");
  }
  const double best_deviation = stage1.value;

  // Stage 2: hold the deviation at its optimum and minimize the absolute
  // Möbius mass of every subset with two or more members.
  std::vector<unsigned> interaction_masks;
  for (unsigned s = 1; s <= full; ++s) {
    if (std::popcount(s) >= 2) interaction_masks.push_back(s);
  }
  const std::size_t num_u = interaction_masks.size();
  LinearProgram sparse;
  sparse.objective.assign(num_v + num_u, 0.0);
  for (std::size_t k = 0; k < num_u; ++k) sparse.objective[num_v + k] = 1.0;
  const double slack = best_deviation + 1e-9;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    std::vector<double> up = scores[r].coefs;
    sparse.AddRow(up, targets[r] - scores[r].constant + slack);
    std::vector<double> down(num_v, 0.0);
    for (std::size_t k = 0; k < num_v; ++k) down[k] = -scores[r].coefs[k];
    sparse.AddRow(down, scores[r].constant - targets[r] + slack);
  }
  add_monotonicity(sparse);
  for (std::size_t k = 0; k < num_u; ++k) {
    const unsigned s = interaction_masks[k];
    std::vector<double> mass(num_v + num_u, 0.0);
    double constant = 0.0;
    const int size_s = std::popcount(s);
    for (unsigned t = s; t != 0; t = (t - 1) & s) {
      const double sign = ((size_s - std::popcount(t)) & 1) ? -1.0 : 1.0;
      if (t == full) {
        constant += sign;
      } else {
        mass[static_cast<std::size_t>(var_of_mask[t])] += sign;
      }
    }
    // mass.v + constant - u <= 0  and  -(mass.v + constant) - u <= 0
    std::vector<double> pos = mass;
    pos[num_v + k] = -1.0;
    sparse.AddRow(pos, -constant);
    std::vector<double> neg(num_v + num_u, 0.0);
    for (std::size_t j = 0; j < num_v; ++j) neg[j] = -mass[j];
    neg[num_v + k] = -1.0;
    sparse.AddRow(neg, constant);
  }
  LpSolution stage2 = SolveLinearProgram(sparse);
  const std::vector<double>& x =
      stage2.status == LpSolution::Status::kOptimal ? stage2.x : stage1.x;

  // Snap solver round-off back onto the monotone normalized cone. Masks are
  // visited in increasing order, so every S \ {i} is final before S.
  std::vector<double> values(full + 1, 0.0);
  values[full] = 1.0;
  for (unsigned s = 1; s < full; ++s) {
    double v = std::clamp(x[static_cast<std::size_t>(var_of_mask[s])], 0.0, 1.0);
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const unsigned bit = 1u << i;
      if (s & bit) v = std::max(v, values[s & ~bit]);
    }
    values[s] = v;
  }

  FitResult result{Capacity(criteria, std::move(values)), 0.0, {}, false};
  for (std::size_t r = 0; r < table.num_alternatives(); ++r) {
    const double score = Choquet(table.rows()[r], result.capacity);
    result.scores.push_back(score);
    result.max_deviation = std::max(result.max_deviation, std::abs(score - targets[r]));
  }
  result.feasible = result.max_deviation <= opts.tolerance;
  return result;
}

}  // namespace cplan::mcdm
