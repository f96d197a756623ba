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

#include <algorithm>
#include <cmath>
#include <random>

#include "cplan/error.h"
#include "cplan/mcdm/choquet.h"
#include "doctest.h"
#include "oracles.h"

using cplan::Error;
using cplan::ErrorCode;
using namespace cplan::mcdm;

namespace {

CriteriaSet Criteria(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i + 1));
  return CriteriaSet(names);
}

std::vector<double> RandomValues(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

EvaluationTable ScenarioTable() {
  return EvaluationTable(CriteriaSet::Default(), oracle::kScenarioIds, oracle::kScenarioTable);
}

}  // namespace

TEST_CASE("Choquet special cases") {
  const auto c = CriteriaSet::Default();
  const Capacity some(c, oracle::HandSolvedScenarioCapacity());
  const std::vector<double> flat{0.4, 0.4, 0.4};
  CHECK(Choquet(flat, some) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(Choquet(flat, Capacity::Min(c)) == doctest::Approx(0.4).epsilon(1e-15));

  const std::vector<double> s1{0.664, 0.042, 0.036};
  CHECK(Choquet(s1, Capacity::Min(c)) == 0.036);

  const std::vector<double> w{0.5, 0.3, 0.2};
  const std::vector<double> unit{1, 0, 0};
  CHECK(Choquet(unit, Capacity::Additive(c, w)) == doctest::Approx(0.5).epsilon(1e-15));

  const std::vector<double> s2{0.043, 0.592, 0.627};
  CHECK(std::abs(Choquet(s2, some) - 0.329) <= 0.005);
}

TEST_CASE("Choquet rejects malformed input") {
  const auto cap = Capacity::Min(CriteriaSet::Default());
  const std::vector<double> two{0.1, 0.2};
  CHECK_THROWS_AS(Choquet(two, cap), Error);
  const std::vector<double> high{0.1, 1.2, 0.3};
  try {
    Choquet(high, cap);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomainError);
  }
  const std::vector<double> nan{0.1, std::nan(""), 0.3};
  CHECK_THROWS_AS(Choquet(nan, cap), Error);
}

TEST_CASE("Choquet agrees with the Mobius-form oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto v = oracle::RandomCapacityValues(rng, n);
    const Capacity cap(Criteria(n), v);
    const auto x = RandomValues(rng, n);
    CHECK(std::abs(Choquet(x, cap) - oracle::ChoquetViaMobius(x, v)) <= 1e-12);
  }
}

TEST_CASE("Choquet properties on random capacities") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Capacity cap(Criteria(n), oracle::RandomCapacityValues(rng, n));
    auto x = RandomValues(rng, n);
    const double base = Choquet(x, cap);
    CHECK(base >= *std::min_element(x.begin(), x.end()) - 1e-15);
    CHECK(base <= *std::max_element(x.begin(), x.end()) + 1e-15);

    // Monotone in each argument.
    auto raised = x;
    const std::size_t k = trial % n;
    raised[k] = x[k] + (1.0 - x[k]) * u(rng);
    CHECK(Choquet(raised, cap) >= base - 1e-15);

    // Comonotonic additivity: g shares f's order, f + g stays in range.
    std::vector<double> f(n), g(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    const double scale = u(rng);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = 0.5 * x[i];
      g[i] = 0.5 * scale * x[i] * x[i];
    }
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = f[i] + g[i];
    CHECK(std::abs(Choquet(sum, cap) - Choquet(f, cap) - Choquet(g, cap)) <= 1e-12);
  }
}

TEST_CASE("Choquet ties do not depend on the tie order") {
  const auto c = CriteriaSet::Default();
  const Capacity cap(c, oracle::HandSolvedScenarioCapacity());
  const std::vector<double> a{0.3, 0.3, 0.7};
  const std::vector<double> b{0.3, 0.3 + 1e-17, 0.7};
  CHECK(Choquet(a, cap) == doctest::Approx(Choquet(b, cap)).epsilon(1e-15));
}

TEST_CASE("EvaluationTable validation") {
  const auto table = ScenarioTable();
  for (double s : table.ColumnSums()) CHECK(std::abs(s - 1.0) <= 1e-9);
  const auto c = CriteriaSet::Default();
  CHECK_THROWS_AS(EvaluationTable(c, {"S1", "S2"}, {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.4}}), Error);
  CHECK_THROWS_AS(EvaluationTable(c, {"S1"}, {{1, 1}}), Error);
  CHECK_THROWS_AS(EvaluationTable(c, {"S1", "S1"}, {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}), Error);
  CHECK_THROWS_AS(EvaluationTable(c, {"S1", "S2"}, {{1.5, 0.5, 0.5}, {-0.5, 0.5, 0.5}}), Error);
  CHECK(ValidateColumns({{0.5, 0.5, 0.5}, {0.5, 0.5, 0.4}}, 3, 1e-6).size() == 1);
}

TEST_CASE("RankScores assigns ranks by score then id") {
  const auto ranked = RankScores(oracle::kScenarioIds, oracle::kScenarioScores);
  std::vector<int> ranks;
  for (const auto& r : ranked) ranks.push_back(r.rank);
  CHECK(ranks == std::vector<int>{2, 1, 3, 4});

  const auto tied = RankScores({"S10", "S2", "S1"}, {0.5, 0.5, 0.5});
  CHECK(tied[0].rank == 3);
  CHECK(tied[1].rank == 2);
  CHECK(tied[2].rank == 1);

  CHECK(RankScores({"A"}, {0.0})[0].rank == 1);
}

TEST_CASE("RankAlternatives") {
  const auto c = CriteriaSet::Default();
  const EvaluationTable same(
      c, {"S3", "S1", "S2"},
      {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}});
  const auto ranked = RankAlternatives(same, Capacity(c, oracle::HandSolvedScenarioCapacity()));
  CHECK(ranked[0].rank == 3);
  CHECK(ranked[1].rank == 1);
  CHECK(ranked[2].rank == 2);

  const EvaluationTable single(c, {"S9"}, {{1, 1, 1}});
  CHECK(RankAlternatives(single, Capacity::Min(c))[0].rank == 1);
  CHECK(RankAlternatives(single, Capacity::Max(c))[0].rank == 1);

  const auto scenario_ranking =
      RankAlternatives(ScenarioTable(), Capacity(c, oracle::HandSolvedScenarioCapacity()));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(scenario_ranking[i].score - oracle::kScenarioScores[i]) <= 1e-9);
  }
  CHECK(scenario_ranking[1].rank == 1);

  CHECK_THROWS_AS(RankAlternatives(ScenarioTable(), Capacity::Min(CriteriaSet({"a", "b", "c"}))),
                  Error);
}

TEST_CASE("Ranking depends only on scores and ids") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> level(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> ids;
    std::vector<double> scores;
    for (int i = 0; i < 6; ++i) {
      ids.push_back("S" + std::to_string(i + 1));
      scores.push_back(level(rng) * 0.25);
    }
    const auto ranked = RankScores(ids, scores);
    // Shuffle rows: each id keeps its rank.
    std::vector<std::size_t> perm(ids.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> ids2;
    std::vector<double> scores2;
    for (auto p : perm) {
      ids2.push_back(ids[p]);
      scores2.push_back(scores[p]);
    }
    const auto ranked2 = RankScores(ids2, scores2);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(ranked2[i].rank == ranked[perm[i]].rank);
    // Ranks are a permutation, non-increasing in score.
    std::vector<int> seen(ids.size() + 1, 0);
    for (const auto& r : ranked) seen[static_cast<std::size_t>(r.rank)]++;
    CHECK(std::count(seen.begin() + 1, seen.end(), 1) == static_cast<long>(ids.size()));
    for (const auto& a : ranked)
      for (const auto& b : ranked)
        if (a.rank < b.rank) CHECK(a.score >= b.score);
  }
}

TEST_CASE("IdLess natural ordering") {
  CHECK(IdLess("S2", "S10"));
  CHECK_FALSE(IdLess("S10", "S2"));
  CHECK(IdLess("S1", "S2"));
  CHECK(IdLess("A", "B"));
  CHECK_FALSE(IdLess("S1", "S1"));
  CHECK(IdLess("S01", "S1") != IdLess("S1", "S01"));
}
