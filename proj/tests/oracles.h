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

// Test-only reference computations, deliberately independent of the library
// code paths they check.
#ifndef CPLAN_TESTS_ORACLES_H_
#define CPLAN_TESTS_ORACLES_H_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cplan/cbr/case_base.h"

namespace oracle {

// Largest real root of the characteristic polynomial of a 3x3 matrix, by
// bisection on det(lambda I - A), and the matching eigenvector from the cross
// product of two rows of (A - lambda I).
struct Eigen3 {
  double lambda;
  std::array<double, 3> w;
};

inline double Det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Eigen3 PrincipalEigen3(const std::array<std::array<double, 3>, 3>& a) {
  auto charpoly = [&](double lambda) {
    auto m = a;
    for (int i = 0; i < 3; ++i) m[i][i] = lambda - a[i][i];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) m[i][j] = -a[i][j];
    return Det3(m);
  };
  // Perron root of a positive 3x3 matrix lies in [min row sum, max row sum].
  double lo = 1e300, hi = 0;
  for (auto& row : a) {
    const double s = row[0] + row[1] + row[2];
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  // charpoly is monotone increasing beyond the largest root.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (charpoly(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  std::array<double, 3> r0{a[0][0] - lambda, a[0][1], a[0][2]};
  std::array<double, 3> r1{a[1][0], a[1][1] - lambda, a[1][2]};
  std::array<double, 3> w{r0[1] * r1[2] - r0[2] * r1[1], r0[2] * r1[0] - r0[0] * r1[2],
                          r0[0] * r1[1] - r0[1] * r1[0]};
  const double s = w[0] + w[1] + w[2];
  for (double& v : w) v /= s;
  return {lambda, w};
}

// Choquet integral through the Möbius form: sum over S of m(S) * min_{i in S} x_i.
inline double ChoquetViaMobius(const std::vector<double>& x, const std::vector<double>& v) {
  const unsigned full = static_cast<unsigned>(v.size() - 1);
  double acc = 0.0;
  for (unsigned s = 1; s <= full; ++s) {
    double mass = 0.0;
    for (unsigned t = 0; t <= full; ++t) {
      if ((t & s) != t) continue;
      const int parity = (std::popcount(s) - std::popcount(t)) & 1;
      mass += parity ? -v[t] : v[t];
    }
    double lo = 1e300;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (s & (1u << i)) lo = std::min(lo, x[i]);
    acc += mass * lo;
  }
  return acc;
}

// Random monotone normalized set function on n criteria. With `dyadic`, every
// value is a multiple of 2^-20 so sums and differences are exact in double.
inline std::vector<double> RandomCapacityValues(std::mt19937_64& rng, std::size_t n,
                                                bool dyadic = false) {
  std::uniform_real_distribution<double> inc(0.0, 1.0);
  const unsigned full = (1u << n) - 1u;
  std::vector<double> v(full + 1, 0.0);
  for (unsigned s = 1; s <= full; ++s) {
    double base = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (s & (1u << i)) base = std::max(base, v[s & ~(1u << i)]);
    v[s] = base + inc(rng);
  }
  const double top = v[full];
  for (double& x : v) x /= top;
  v[full] = 1.0;
  if (dyadic) {
    for (double& x : v) x = std::round(x * 1048576.0) / 1048576.0;
  }
  return v;
}

// Local priorities of the four control scenarios (rows S1..S4) under Risk,
// Cost and Time, and the reported scores.
inline const std::vector<std::vector<double>> kScenarioTable = {
    {0.664, 0.042, 0.036},
    {0.043, 0.592, 0.627},
    {0.088, 0.27, 0.212},
    {0.205, 0.096, 0.125},
};
inline const std::vector<std::string> kScenarioIds = {"S1", "S2", "S3", "S4"};
inline const std::vector<double> kScenarioScores = {0.291, 0.329, 0.17, 0.155};

// Reconstructs a capacity for the scenario table by hand: each row's sort
// order turns Choquet(row) = score into one linear equation. Fixing
// v(Risk+Cost) and v(Time) leaves four equations in v(Risk), v(Cost),
// v(Cost+Time), v(Risk+Time), solved here by substitution. Bit order:
// Risk=1, Cost=2, Time=4.
inline std::vector<double> HandSolvedScenarioCapacity(double v_rc = 0.6, double v_t = 0.2) {
  const auto& t = kScenarioTable;
  const auto& y = kScenarioScores;
  // S1: T < C < R  -> y1 = x_T + (x_C - x_T) v(RC) + (x_R - x_C) v(R)
  const double v_r = (y[0] - t[0][2] - (t[0][1] - t[0][2]) * v_rc) / (t[0][0] - t[0][1]);
  // S2: R < C < T  -> y2 = x_R + (x_C - x_R) v(CT) + (x_T - x_C) v(T)
  const double v_ct = (y[1] - t[1][0] - (t[1][2] - t[1][1]) * v_t) / (t[1][1] - t[1][0]);
  // S3: R < T < C  -> y3 = x_R + (x_T - x_R) v(CT) + (x_C - x_T) v(C)
  const double v_c = (y[2] - t[2][0] - (t[2][2] - t[2][0]) * v_ct) / (t[2][1] - t[2][2]);
  // S4: C < T < R  -> y4 = x_C + (x_T - x_C) v(RT) + (x_R - x_T) v(R)
  const double v_rt = (y[3] - t[3][1] - (t[3][0] - t[3][2]) * v_r) / (t[3][2] - t[3][1]);
  std::vector<double> v(8, 0.0);
  v[1] = v_r;
  v[2] = v_c;
  v[3] = v_rc;
  v[4] = v_t;
  v[5] = v_rt;
  v[6] = v_ct;
  v[7] = 1.0;
  return v;
}

inline bool IsMonotoneNormalized(const std::vector<double>& v, std::size_t n) {
  const unsigned full = (1u << n) - 1u;
  if (v[0] != 0.0 || v[full] != 1.0) return false;
  for (unsigned s = 0; s <= full; ++s)
    for (unsigned t = 0; t <= full; ++t)
      if ((s & t) == s && v[s] > v[t]) return false;
  return true;
}

// Independent linear scan: distances recomputed from the formula, ties to
// the larger id, strict threshold, only satisfactory cases.
inline std::optional<cplan::cbr::RetrievalResult> ScanRetrieve(
    const cplan::cbr::QualitySituation& t, const cplan::cbr::CaseBase& base,
    const cplan::cbr::RetrievalConfig& cfg) {
  std::optional<cplan::cbr::RetrievalResult> best;
  const auto x = t.AsArray();
  for (auto it = base.cases().rbegin(); it != base.cases().rend(); ++it) {
    if (it->status != cplan::cbr::CaseStatus::kSatisfactory) continue;
    const auto y = it->situation.AsArray();
    double acc = 0.0;
    for (int k = 0; k < 4; ++k)
      acc += cfg.attribute_weights[k] * std::pow(std::abs(x[k] - y[k]), cfg.order_p);
    const double d = cfg.order_p == 1.0 ? acc : std::pow(acc, 1.0 / cfg.order_p);
    if (!best || d < best->distance) best = cplan::cbr::RetrievalResult{it->id, d};
  }
  if (best && !(best->distance < cfg.threshold)) best.reset();
  return best;
}

}  // namespace oracle

#endif  // CPLAN_TESTS_ORACLES_H_
