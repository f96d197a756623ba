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

#include "cplan/mcdm/linear_program.h"

#include <cmath>
#include <cstddef>
#include <limits>

namespace cplan::mcdm {

void LinearProgram::AddRow(std::vector<double> coefs, double bound) {
  coefs.resize(objective.size(), 0.0);
  rows.push_back(std::move(coefs));
  bounds.push_back(bound);
}

namespace {

constexpr double kPivotEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), t_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  double& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t num_rows() const { return t_.size(); }
  std::size_t num_cols() const { return cols_; }

  void RemoveRow(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void Pivot(std::size_t pr, std::size_t pc) {
    auto& prow = t_[pr];
    const double p = prow[pc];
    for (double& v : prow) v /= p;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (r == pr) continue;
      const double f = t_[r][pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) t_[r][c] -= f * prow[c];
    }
    basis_[pr] = pc;
  }

  // Minimizes cost.x over columns flagged in `allowed`. Returns false when
  // unbounded.
  bool Optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    const std::size_t max_pivots = 50000;
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_ && entering == cols_; ++c) {
        if (!allowed[c]) continue;
        double reduced = cost[c];
        for (std::size_t r = 0; r < t_.size(); ++r) reduced -= cost[basis_[r]] * t_[r][c];
        if (reduced < -1e-10) entering = c;
      }
      if (entering == cols_) return true;
      std::size_t leaving = t_.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < t_.size(); ++r) {
        const double a = t_[r][entering];
        if (a <= kPivotEps) continue;
        const double ratio = t_[r][cols_] / a;
        if (ratio < best - 1e-13 || (std::abs(ratio - best) <= 1e-13 && leaving < t_.size() &&
                                     basis_[r] < basis_[leaving])) {
          best = ratio;
          leaving = r;
        }
      }
      if (leaving == t_.size()) return false;
      Pivot(leaving, entering);
    }
    return true;
  }

  double Value(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t r = 0; r < t_.size(); ++r) v += cost[basis_[r]] * t_[r][cols_];
    return v;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  std::size_t num_art = 0;
  for (double b : lp.bounds) num_art += b < 0.0 ? 1 : 0;

  // Columns: originals, one slack per row, then artificials.
  const std::size_t cols = n + m + num_art;
  Tableau tab(m, cols);
  std::size_t next_art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = lp.bounds[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = sign * lp.rows[r][c];
    tab.at(r, n + r) = sign;
    tab.rhs(r) = sign * lp.bounds[r];
    if (sign < 0.0) {
      tab.at(r, next_art) = 1.0;
      tab.basis(r) = next_art++;
    } else {
      tab.basis(r) = n + r;
    }
  }

  LpSolution sol;
  if (num_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = n + m; c < cols; ++c) phase1[c] = 1.0;
    tab.Optimize(phase1, std::vector<bool>(cols, true));
    if (tab.Value(phase1) > 1e-9) {
      sol.status = LpSolution::Status::kInfeasible;
      return sol;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < tab.num_rows();) {
      if (tab.basis(r) < n + m) {
        ++r;
        continue;
      }
      std::size_t pc = n + m;
      for (std::size_t c = 0; c < n + m; ++c) {
        if (std::abs(tab.at(r, c)) > kPivotEps) {
          pc = c;
          break;
        }
      }
      if (pc == n + m) {
        tab.RemoveRow(r);  // redundant constraint
      } else {
        tab.Pivot(r, pc);
        ++r;
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t c = 0; c < n; ++c) cost[c] = lp.objective[c];
  std::vector<bool> allowed(cols, false);
  for (std::size_t c = 0; c < n + m; ++c) allowed[c] = true;
  if (!tab.Optimize(cost, allowed)) {
    sol.status = LpSolution::Status::kUnbounded;
    return sol;
  }
  sol.status = LpSolution::Status::kOptimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < tab.num_rows(); ++r) {
    if (tab.basis(r) < n) sol.x[tab.basis(r)] = tab.rhs(r);
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.value += lp.objective[c] * sol.x[c];
  return sol;
}

}  // namespace cplan::mcdm
