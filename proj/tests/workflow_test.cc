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

#include <random>

#include "cplan/error.h"
#include "cplan/workflow/engine.h"
#include "doctest.h"
#include "oracles.h"

using cplan::Error;
using cplan::ErrorCode;
using namespace cplan;
using namespace cplan::workflow;
using cbr::Objectives;
using cbr::QualitySituation;

namespace {

const QualitySituation kBaseSituation{1.2, 1.2, 10, 3};
const QualitySituation kCrimpingSituation{0.9, 1, 47, 10};
const Objectives kCrimpingObjectives{1, 1.2, 15, 3};
const Objectives kLoose{1.0, 1.0, 10, 3};

Engine FreshEngine() {
  int tick = 0;
  return Engine(SystemState{}, [tick]() mutable {
    return "2026-01-01T00:00:" + std::string(tick < 10 ? "0" : "") + std::to_string(tick++ % 60) +
           "Z";
  });
}

mcdm::Capacity ScenarioCapacity() {
  return mcdm::Capacity(mcdm::CriteriaSet::Default(), oracle::HandSolvedScenarioCapacity());
}

// Consistent matrices whose priority vectors are the scenario table columns.
ManualInput ScenarioMatrices() {
  ManualInput in{{}, {}, std::nullopt, ScenarioCapacity()};
  const auto criteria = mcdm::CriteriaSet::Default();
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> col;
    for (const auto& row : oracle::kScenarioTable) col.push_back(row[c]);
    in.matrices.emplace(criteria.name(c), mcdm::PairwiseMatrix::FromWeights(col, criteria.name(c)));
  }
  return in;
}

cbr::Case SourceCase() {
  cbr::Case c;
  c.context = {"Splitting/Crimping", "crimping height"};
  c.situation = {0.95, 1.2, 39, 10};
  c.scenario_id = "S3";
  c.objectives = kCrimpingObjectives;
  c.observed = QualitySituation{1.1, 1.25, 12, 2.5};
  c.status = cbr::CaseStatus::kSatisfactory;
  return c;
}

template <typename F>
void CheckIllegal(F&& f) {
  try {
    f();
    FAIL("expected illegal transition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIllegalTransition);
  }
}

}  // namespace

TEST_CASE("Scenario catalog") {
  const auto c = ScenarioCatalog::Default();
  CHECK(c.ids() == std::vector<std::string>{"S1", "S2", "S3", "S4"});
  CHECK(c.Find("S2")->name == "Sampling control by measure (simple plan)");
  CHECK(c.Find("S3")->name == "Sampling control by measure (double plan)");
  ScenarioCatalog copy = c;
  CHECK_THROWS_AS(copy.Add({"S2", "dup", "", {}}), Error);
  CHECK_THROWS_AS(copy.Add({"S5", "", "", {}}), Error);
  copy.Add({"S5", "100% inspection", "", {}});
  copy.Update({"S1", "Visual check", "", {}});
  CHECK(copy.Find("S1")->name == "Visual check");
  CHECK_THROWS_AS(copy.Update({"S9", "x", "", {}}), Error);
}

TEST_CASE("State graph edges") {
  using S = SessionState;
  CHECK(IsEdge(S::kCreated, S::kSituationEntered));
  CHECK(IsEdge(S::kManualEvaluated, S::kManualRequired));
  CHECK_FALSE(IsEdge(S::kCreated, S::kManualRequired));
  CHECK_FALSE(IsEdge(S::kClosed, S::kCreated));
  for (int i = 0; i < 9; ++i) {
    const auto s = static_cast<S>(i);
    CHECK(ParseState(StateName(s)) == s);
  }
}

TEST_CASE("Empty base routes to manual choice") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession({"Splitting/Crimping", "crimping height"});
  CHECK(e.session(id).state == SessionState::kCreated);
  CHECK(e.SubmitSituation(id, kBaseSituation, kLoose) == SessionState::kManualRequired);
  CHECK(e.session(id).trail.size() == 2);
}

TEST_CASE("Invalid situations are rejected without a state change") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  try {
    e.SubmitSituation(id, {1.2, 1.2, 150, 3}, kLoose);
    FAIL("expected validation error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kValidationFailed);
    REQUIRE(!err.details().empty());
    CHECK(err.details()[0].field == "ncr");
  }
  CHECK(e.session(id).state == SessionState::kCreated);
  CHECK(e.TakeEvents().empty());
  CHECK_THROWS_AS(e.session(99), Error);
}

TEST_CASE("Seeded base yields an automatic recommendation") {
  Engine e = FreshEngine();
  e.ImportCase(SourceCase());
  e.TakeEvents();
  const auto id = e.CreateSession();
  CHECK(e.SubmitSituation(id, kCrimpingSituation, kCrimpingObjectives) ==
        SessionState::kAutoRecommended);
  const auto& s = e.session(id);
  REQUIRE(s.recommendation.has_value());
  CHECK(s.recommendation->scenario_id == "S3");
  CHECK(s.recommendation->distance == 8.25);
  CHECK(s.recommendation->source_case_id == 1);
  REQUIRE(s.trail.back().recommendation.has_value());
  CHECK(s.trail.back().recommendation->source_case_id == 1);

  e.Accept(id);
  CHECK(e.session(id).selected_scenario == "S3");
  CHECK(e.session(id).state == SessionState::kScenarioSelected);
  CheckIllegal([&] { e.Accept(id); });
}

TEST_CASE("Rejecting a recommendation keeps it in the trail") {
  Engine e = FreshEngine();
  e.ImportCase(SourceCase());
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kCrimpingSituation, kCrimpingObjectives);
  e.Reject(id);
  const auto& s = e.session(id);
  CHECK(s.state == SessionState::kManualRequired);
  bool found = false;
  for (const auto& t : s.trail)
    found = found || (t.recommendation && t.recommendation->scenario_id == "S3");
  CHECK(found);
  CHECK(e.state().config.retrieval.threshold == 10.0);
}

TEST_CASE("Manual evaluation from pairwise matrices selects S2") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kBaseSituation, kLoose);
  const auto& eval = e.ManualEvaluate(id, ScenarioMatrices());
  CHECK(eval.Best() == "S2");
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(std::abs(eval.table.rows()[a][c] - oracle::kScenarioTable[a][c]) <= 1e-9);
    }
    CHECK(std::abs(eval.ranking[a].score - oracle::kScenarioScores[a]) <= 0.005);
  }
  for (const auto& [name, cr] : eval.consistency_ratios) CHECK(cr <= 1e-6);
  CHECK(e.session(id).state == SessionState::kManualEvaluated);

  // Re-evaluation passes back through ManualRequired.
  const auto before = e.session(id).trail.size();
  e.ManualEvaluate(id, ScenarioMatrices());
  CHECK(e.session(id).trail.size() == before + 2);
}

TEST_CASE("Manual evaluation with an injected table") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kBaseSituation, kLoose);
  ManualInput in{{},
                 {},
                 mcdm::EvaluationTable(mcdm::CriteriaSet::Default(), oracle::kScenarioIds,
                                       oracle::kScenarioTable),
                 ScenarioCapacity()};
  const auto& eval = e.ManualEvaluate(id, in);
  const std::vector<int> want{2, 1, 3, 4};
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(eval.ranking[a].rank == want[a]);
    CHECK(std::abs(eval.ranking[a].score - oracle::kScenarioScores[a]) <= 0.005);
  }
}

TEST_CASE("All-ones judgments with a uniform additive capacity tie everything") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kBaseSituation, kLoose);
  const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  ManualInput in{{"S3", "S1", "S2"},
                 {},
                 std::nullopt,
                 mcdm::Capacity::Additive(mcdm::CriteriaSet::Default(), w)};
  const std::vector<std::vector<double>> ones(3, std::vector<double>(3, 1.0));
  for (const char* c : {"Risk", "Cost", "Time"}) in.matrices.emplace(c, mcdm::PairwiseMatrix(ones));
  const auto& eval = e.ManualEvaluate(id, in);
  CHECK(eval.ranking[0].rank == 3);
  CHECK(eval.ranking[1].rank == 1);
  CHECK(eval.ranking[2].rank == 2);
}

TEST_CASE("Manual evaluation warnings and errors") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kBaseSituation, kLoose);
  ManualInput in = ScenarioMatrices();
  // Strongly inconsistent 4x4 judgments for Risk.
  in.matrices.insert_or_assign("Risk", mcdm::PairwiseMatrix({{1, 9, 1.0 / 9, 9},
                                                             {1.0 / 9, 1, 9, 1.0 / 9},
                                                             {9, 1.0 / 9, 1, 9},
                                                             {1.0 / 9, 9, 1.0 / 9, 1}}));
  const auto& eval = e.ManualEvaluate(id, in);
  CHECK(eval.consistency_ratios.at("Risk") > 0.10);
  CHECK_FALSE(eval.warnings.empty());

  auto cfg = e.state().config;
  cfg.strict_consistency = true;
  e.SetConfig(cfg);
  try {
    e.ManualEvaluate(id, in);
    FAIL("expected strict rejection");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kInconsistentJudgments);
  }
  CHECK(e.session(id).state == SessionState::kManualEvaluated);

  ManualInput missing = ScenarioMatrices();
  missing.matrices.erase("Time");
  CHECK_THROWS_AS(e.ManualEvaluate(id, missing), Error);
  ManualInput unknown = ScenarioMatrices();
  unknown.alternatives = {"S1", "S2", "S3", "S9"};
  CHECK_THROWS_AS(e.ManualEvaluate(id, unknown), Error);
  ManualInput wrong_size = ScenarioMatrices();
  wrong_size.alternatives = {"S1", "S2"};
  CHECK_THROWS_AS(e.ManualEvaluate(id, wrong_size), Error);
}

TEST_CASE("Selection, application and results follow the state order") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kBaseSituation, kLoose);
  CheckIllegal([&] { e.ConfirmSelection(id, "S2"); });
  e.ManualEvaluate(id, ScenarioMatrices());
  try {
    e.ConfirmSelection(id, "S9");
    FAIL("expected catalog error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kUnknownScenario);
  }
  CheckIllegal([&] { e.RecordResults(id, {1.3, 1.25, 8, 2}); });
  e.ConfirmSelection(id, "S2");
  CheckIllegal([&] { e.RecordResults(id, {1.3, 1.25, 8, 2}); });
  e.UpdateObjectives(id, {1.0, 1.0, 9, 3});
  e.Apply(id, {"P30D", "calendar days"});
  CheckIllegal([&] { e.UpdateObjectives(id, kLoose); });
  e.RecordResults(id, {1.3, 1.25, 8, 2});
  CHECK(e.session(id).state == SessionState::kResultsRecorded);
  CHECK(e.session(id).observed == QualitySituation{1.3, 1.25, 8, 2});
  CHECK(e.session(id).period->duration == "P30D");
  CHECK_FALSE(e.session(id).recorded_at.empty());
}

TEST_CASE("Closing a satisfactory manual session retains the case") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession({"Splitting/Crimping", "crimping height"});
  e.SubmitSituation(id, kBaseSituation, kLoose);
  e.ManualEvaluate(id, ScenarioMatrices());
  e.Accept(id);
  CHECK(e.session(id).selected_scenario == "S2");
  e.Apply(id);
  e.RecordResults(id, {1.3, 1.25, 8, 2});
  const auto out = e.Close(id);
  CHECK(out.status == cbr::Outcome::kSatisfactory);
  CHECK(out.case_id == 1);
  CHECK(e.state().cases.size() == 1);
  CHECK(e.state().cases.cases()[0].origin == cbr::Origin::kManual);
  CHECK(e.session(id).state == SessionState::kClosed);

  // Closed sessions are frozen.
  const Session frozen = e.session(id);
  CheckIllegal([&] { e.Close(id); });
  CheckIllegal([&] { e.Accept(id); });
  CheckIllegal([&] { e.Apply(id); });
  CheckIllegal([&] { e.SubmitSituation(id, kBaseSituation, kLoose); });
  CheckIllegal([&] { e.UpdateObjectives(id, kLoose); });
  CHECK(e.session(id) == frozen);

  // Same situation again: automatic recommendation at distance 0.
  const auto again = e.CreateSession();
  CHECK(e.SubmitSituation(again, kBaseSituation, kLoose) == SessionState::kAutoRecommended);
  CHECK(e.session(again).recommendation->scenario_id == "S2");
  CHECK(e.session(again).recommendation->distance == 0.0);
}

TEST_CASE("A failed automatic case lowers the threshold") {
  Engine e = FreshEngine();
  e.ImportCase(SourceCase());
  const auto id = e.CreateSession();
  e.SubmitSituation(id, kCrimpingSituation, kCrimpingObjectives);
  e.Accept(id);
  e.Apply(id);
  e.RecordResults(id, {1.1, 1.25, 16, 2.5});
  e.TakeEvents();
  const auto out = e.Close(id);
  CHECK(out.status == cbr::Outcome::kUnsatisfactory);
  REQUIRE(out.threshold_change.has_value());
  CHECK(out.threshold_change->before == 10.0);
  CHECK(std::abs(out.threshold_change->after - 7.8375) <= 1e-12);
  CHECK(std::abs(e.state().config.retrieval.threshold - 7.8375) <= 1e-12);
  const auto& retained = e.state().cases.cases().back();
  CHECK(retained.status == cbr::CaseStatus::kFailed);
  CHECK(retained.origin == cbr::Origin::kAutomatic);
  CHECK(retained.source_case_id == 1);
  CHECK(retained.retrieval_distance == 8.25);

  bool threshold_event = false;
  for (const auto& ev : e.TakeEvents())
    threshold_event = threshold_event || ev.kind == AuditKind::kThresholdChange;
  CHECK(threshold_event);

  const auto repeat = e.CreateSession();
  CHECK(e.SubmitSituation(repeat, kCrimpingSituation, kCrimpingObjectives) ==
        SessionState::kManualRequired);
}

TEST_CASE("A failed manual case opens a successor with prior judgments") {
  Engine e = FreshEngine();
  const auto id = e.CreateSession({"op", "char"});
  e.SubmitSituation(id, kBaseSituation, kLoose);
  e.ManualEvaluate(id, ScenarioMatrices());
  e.Accept(id);
  e.Apply(id);
  e.RecordResults(id, {0.8, 0.7, 20, 5});
  const auto out = e.Close(id);
  CHECK(out.action.kind == cbr::RevisionAction::Kind::kRepairManual);
  CHECK_FALSE(out.threshold_change.has_value());
  CHECK(e.state().config.retrieval.threshold == 10.0);
  REQUIRE(out.successor_session_id.has_value());
  const auto& next = e.session(*out.successor_session_id);
  CHECK(next.state == SessionState::kManualRequired);
  CHECK(next.predecessor_id == id);
  CHECK(next.prior_matrices == e.session(id).manual->matrices);
  CHECK(next.situation == kBaseSituation);
  CHECK(e.state().cases.cases().back().status == cbr::CaseStatus::kFailed);
}

TEST_CASE("Random operation sequences stay on the state graph") {
  std::mt19937_64 rng(51);
  Engine e = FreshEngine();
  e.ImportCase(SourceCase());
  std::size_t transitions_seen = 0;
  for (int round = 0; round < 200; ++round) {
    const auto id = e.CreateSession();
    for (int step = 0; step < 12; ++step) {
      const Session before = e.session(id);
      try {
        switch (rng() % 9) {
          case 0:
            e.SubmitSituation(id, rng() % 2 ? kCrimpingSituation : kBaseSituation, kLoose);
            break;
          case 1: e.Accept(id); break;
          case 2: e.Reject(id); break;
          case 3: e.ManualEvaluate(id, ScenarioMatrices()); break;
          case 4: e.ConfirmSelection(id, "S" + std::to_string(1 + rng() % 4)); break;
          case 5: e.Apply(id); break;
          case 6:
            e.RecordResults(
                id, rng() % 2 ? QualitySituation{2, 2, 1, 0} : QualitySituation{0.5, 0.4, 50, 9});
            break;
          case 7: e.Close(id); break;
          default: e.SubmitSituation(id, {1, 1, 200, 0}, kLoose); break;
        }
      } catch (const Error& err) {
        CHECK(e.session(id) == before);
      }
    }
    const auto& s = e.session(id);
    SessionState at = SessionState::kCreated;
    for (const auto& t : s.trail) {
      CHECK(t.from == at);
      CHECK(IsEdge(t.from, t.to));
      if (t.to == SessionState::kAutoRecommended) CHECK(t.recommendation.has_value());
      at = t.to;
    }
    CHECK(at == s.state);
  }
  for (const auto& [id, s] : e.state().sessions) transitions_seen += s.trail.size();
  std::size_t transition_events = 0;
  for (const auto& ev : e.TakeEvents()) transition_events += ev.kind == AuditKind::kTransition;
  CHECK(transition_events == transitions_seen);
}

TEST_CASE("Config changes are validated and audited") {
  Engine e = FreshEngine();
  auto cfg = e.state().config;
  cfg.retrieval.threshold = 5.0;
  e.SetConfig(cfg);
  const auto events = e.TakeEvents();
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == AuditKind::kThresholdChange);
  CHECK(events[0].session_id == 0);
  cfg.retrieval.order_p = 0.5;
  CHECK_THROWS_AS(e.SetConfig(cfg), Error);
  cfg.retrieval.order_p = 1;
  cfg.repair_delta = 1.5;
  CHECK_THROWS_AS(e.SetConfig(cfg), Error);
  CHECK(e.state().config.retrieval.threshold == 5.0);

  cbr::Case c = SourceCase();
  c.scenario_id = "S9";
  CHECK_THROWS_AS(e.ImportCase(c), Error);
}
