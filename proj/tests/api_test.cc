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

#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "cplan/api/http_server.h"
#include "cplan/api/replay.h"
#include "cplan/api/service.h"
#include "doctest.h"
#include "generators.h"
#include "httplib.h"

using namespace cplan;
using api::json;
using api::Response;
using api::Service;
namespace fs = std::filesystem;

namespace {

const json kObjectives = {{"cp", 1}, {"cpk", 1}, {"ncr", 10}, {"encr", 3}};

json Situation(double cp, double cpk, double ncr, double encr) {
  return {{"cp", cp}, {"cpk", cpk}, {"ncr", ncr}, {"encr", encr}, {"objectives", kObjectives}};
}

json SourceCase() {
  return {{"situation", {{"cp", 0.95}, {"cpk", 1.2}, {"ncr", 39}, {"encr", 10}}},
          {"scenario_id", "S3"},
          {"objectives", {{"cp", 1}, {"cpk", 1.2}, {"ncr", 15}, {"encr", 3}}},
          {"observed", {{"cp", 1.1}, {"cpk", 1.25}, {"ncr", 12}, {"encr", 2.5}}},
          {"status", "satisfactory"}};
}

json ScenarioCapacity() {
  const auto v = oracle::HandSolvedScenarioCapacity();
  const auto criteria = mcdm::CriteriaSet::Default();
  json values = json::object();
  for (unsigned s = 1; s + 1 < v.size(); ++s) values[criteria.SubsetLabel(s)] = v[s];
  return {{"criteria", criteria.names()}, {"values", values}};
}

json ScenarioMatrices() {
  json out = json::object();
  const auto criteria = mcdm::CriteriaSet::Default();
  for (std::size_t c = 0; c < 3; ++c) {
    json rows = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < 4; ++j) {
        row.push_back(oracle::kScenarioTable[i][c] / oracle::kScenarioTable[j][c]);
      }
      rows.push_back(row);
    }
    out[criteria.name(c)] = rows;
  }
  return out;
}

struct Client {
  Service& svc;
  std::string auth;
  Response operator()(const std::string& method, const std::string& path,
                      const json& body = nullptr) const {
    return svc.Handle(method, path, body.is_null() ? "" : body.dump(), auth);
  }
  std::int64_t NewSession() const {
    const auto r = (*this)("POST", "/api/sessions");
    REQUIRE(r.status == 201);
    return r.body["id"].get<std::int64_t>();
  }
};

std::string SessionPath(std::int64_t id, const std::string& action = "") {
  return "/api/sessions/" + std::to_string(id) + (action.empty() ? "" : "/" + action);
}

using gen::TempDir;

}  // namespace

TEST_CASE("Situation on an empty base routes to manual evaluation") {
  Service svc;
  Client call{svc};
  const auto id = call.NewSession();
  const auto r = call("POST", SessionPath(id, "situation"), Situation(1.2, 1.2, 10, 3));
  REQUIRE(r.status == 200);
  CHECK(r.body["state"] == "ManualRequired");
  CHECK_FALSE(r.body.contains("recommendation"));
  const auto s = call("GET", SessionPath(id));
  CHECK(s.body["actions"] == json::array({"manual", "objectives"}));
  CHECK(s.body["audit"].size() == 2);
}

TEST_CASE("A seeded base recommends S3 at distance 8.25") {
  Service svc;
  Client call{svc};
  const auto imported = call("POST", "/api/cases", SourceCase());
  REQUIRE(imported.status == 201);
  const auto id = call.NewSession();
  const auto r = call("POST", SessionPath(id, "situation"), Situation(0.9, 1, 47, 10));
  REQUIRE(r.status == 200);
  CHECK(r.body["state"] == "AutoRecommended");
  CHECK(r.body["recommendation"]["scenario"] == "S3");
  CHECK(r.body["recommendation"]["distance"].get<double>() == 8.25);
  CHECK(r.body["recommendation"]["source_case"] == imported.body["id"]);

  const auto listed = call("GET", "/api/cases?cp=0.9&cpk=1&ncr=47&encr=10");
  REQUIRE(listed.body.size() == 1);
  CHECK(listed.body[0]["distance"].get<double>() == 8.25);
}

TEST_CASE("Accepting twice is an illegal transition that changes nothing") {
  Service svc;
  Client call{svc};
  call("POST", "/api/cases", SourceCase());
  const auto id = call.NewSession();
  call("POST", SessionPath(id, "situation"), Situation(0.9, 1, 47, 10));
  CHECK(call("POST", SessionPath(id, "decision"), {{"action", "accept"}}).status == 200);
  const auto before = call("GET", SessionPath(id));
  const auto second = call("POST", SessionPath(id, "decision"), {{"action", "accept"}});
  CHECK(second.status == 409);
  CHECK(second.body["code"] == "illegal_transition");
  CHECK(call("GET", SessionPath(id)).body == before.body);
}

TEST_CASE("Manual evaluation over HTTP ranks S2 first") {
  Service svc;
  Client call{svc};
  const auto id = call.NewSession();
  call("POST", SessionPath(id, "situation"), Situation(1.2, 1.2, 10, 3));
  const auto r = call("POST", SessionPath(id, "manual"),
                      {{"matrices", ScenarioMatrices()}, {"capacity", ScenarioCapacity()}});
  REQUIRE(r.status == 200);
  CHECK(r.body["best"] == "S2");
  std::vector<int> ranks;
  for (const auto& row : r.body["ranking"]) ranks.push_back(row["rank"]);
  CHECK(ranks == std::vector<int>{2, 1, 3, 4});
  for (const auto& [name, cr] : r.body["consistency_ratios"].items()) {
    CHECK(cr.get<double>() == doctest::Approx(0).epsilon(1e-9));
  }

  SUBCASE("a Mobius body is accepted") {
    json mobius = {{"Risk", 0.25}, {"Cost", 0.25}, {"Time", 0.25}, {"Risk+Cost", 0.25}};
    const auto again = call("POST", SessionPath(id, "manual"),
                            {{"matrices", ScenarioMatrices()}, {"mobius", mobius}});
    REQUIRE(again.status == 200);
    CHECK(again.body["capacity"]["values"]["Risk+Cost"].get<double>() == 0.75);
  }
  SUBCASE("a non-monotone capacity is a 422 domain error") {
    json cap = ScenarioCapacity();
    cap["values"]["Risk+Time"] = 0.1;
    const auto bad = call("POST", SessionPath(id, "manual"),
                          {{"matrices", ScenarioMatrices()}, {"capacity", cap}});
    CHECK(bad.status == 422);
    CHECK(call("GET", SessionPath(id)).body["state"] == "ManualEvaluated");
  }
}

TEST_CASE("Strict consistency turns a high CR into a 422") {
  Service svc;
  Client call{svc};
  REQUIRE(call("PUT", "/api/config", {{"strict_consistency", true}}).status == 200);
  const auto id = call.NewSession();
  call("POST", SessionPath(id, "situation"), Situation(1.2, 1.2, 10, 3));
  json m = ScenarioMatrices();
  m["Risk"] = {{1, 9, 1.0 / 9, 1}, {1.0 / 9, 1, 9, 1}, {9, 1.0 / 9, 1, 1}, {1, 1, 1, 1}};
  const auto r =
      call("POST", SessionPath(id, "manual"), {{"matrices", m}, {"capacity", ScenarioCapacity()}});
  CHECK(r.status == 422);
  CHECK(r.body["code"] == "inconsistent_judgments");
  CHECK(call("GET", SessionPath(id)).body["state"] == "ManualRequired");
}

TEST_CASE("Error responses carry the documented codes") {
  Service svc;
  Client call{svc};
  const auto id = call.NewSession();
  struct Expect {
    std::string method, path, body;
    int status;
    std::string code;
  };
  const std::vector<Expect> cases = {
      {"GET", "/api/sessions/99", "", 404, "not_found"},
      {"GET", "/api/sessions/abc", "", 404, "not_found"},
      {"GET", "/api/nowhere", "", 404, "not_found"},
      {"POST", SessionPath(id, "situation"), "{not json", 400, "validation_failed"},
      {"POST", SessionPath(id, "situation"), R"({"cp":1,"cpk":1,"ncr":150,"encr":1,
        "objectives":{"cp":1,"cpk":1,"ncr":10,"encr":3}})",
       400, "validation_failed"},
      {"POST", SessionPath(id, "decision"), R"({"action":"maybe"})", 400, "validation_failed"},
      {"POST", SessionPath(id, "apply"), "", 409, "illegal_transition"},
      {"PUT", "/api/config", R"({"order_p":0.5})", 400, "validation_failed"},
      {"POST", "/api/scenarios", R"({"id":"S1","name":"dup"})", 400, "validation_failed"},
      {"PUT", "/api/scenarios/S9", R"({"name":"x"})", 404, "not_found"},
      {"POST", "/api/cases", R"({"situation":{"cp":1,"cpk":1,"ncr":1,"encr":1},
        "scenario_id":"S7","objectives":{"cp":1,"cpk":1,"ncr":1,"encr":1},
        "observed":{"cp":1,"cpk":1,"ncr":1,"encr":1},"status":"failed"})",
       422, "unknown_scenario"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.path);
    CAPTURE(c.body);
    const auto r = svc.Handle(c.method, c.path, c.body);
    CHECK(r.status == c.status);
    CHECK(r.body["code"] == c.code);
    CHECK(r.body["message"].is_string());
    CHECK(r.body["details"].is_array());
  }
  const auto bad = svc.Handle("POST", SessionPath(id, "situation"),
                              R"({"cp":1,"cpk":1,"ncr":150,"encr":1,
                                  "objectives":{"cp":1,"cpk":1,"ncr":10,"encr":3}})");
  REQUIRE(bad.body["details"].size() >= 1);
  CHECK(bad.body["details"][0]["field"] == "ncr");
}

TEST_CASE("Non-2xx responses never change the state") {
  std::mt19937_64 rng(8642);
  Service svc;
  Client call{svc};
  call("POST", "/api/cases", SourceCase());
  const std::vector<std::pair<std::string, json>> actions = {
      {"situation", Situation(0.9, 1, 47, 10)},
      {"situation", Situation(1.2, 1.2, 10, 3)},
      {"decision", {{"action", "accept"}}},
      {"decision", {{"action", "reject"}}},
      {"manual", {{"matrices", ScenarioMatrices()}, {"capacity", ScenarioCapacity()}}},
      {"selection", {{"scenario_id", "S4"}}},
      {"apply", nullptr},
      {"results", {{"cp", 2}, {"cpk", 2}, {"ncr", 1}, {"encr", 0}}},
      {"results", {{"cp", 0.5}, {"cpk", 0.4}, {"ncr", 60}, {"encr", 9}}},
      {"close", nullptr},
  };
  int rejected = 0;
  for (int round = 0; round < 60; ++round) {
    const auto id = call.NewSession();
    for (int step = 0; step < 10; ++step) {
      const auto& [action, body] = actions[rng() % actions.size()];
      const auto before = svc.Snapshot();
      const auto before_get = call("GET", SessionPath(id));
      const auto r = call("POST", SessionPath(id, action), body);
      if (r.status >= 300) {
        ++rejected;
        CHECK(svc.Snapshot() == before);
        CHECK(call("GET", SessionPath(id)).body == before_get.body);
      } else {
        const auto& actions_before = before_get.body["actions"];
        CHECK(std::find(actions_before.begin(), actions_before.end(), action) !=
              actions_before.end());
      }
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("Persistent service survives a restart") {
  TempDir dir;
  workflow::SystemState saved;
  std::int64_t id = 0;
  {
    Service svc(std::make_unique<store::FileStore>(dir.path()));
    Client call{svc};
    call("POST", "/api/cases", SourceCase());
    id = call.NewSession();
    call("POST", SessionPath(id, "situation"), Situation(0.9, 1, 47, 10));
    call("PUT", "/api/config", {{"threshold", 12.5}});
    saved = svc.Snapshot();
  }
  Service svc(std::make_unique<store::FileStore>(dir.path()));
  CHECK(svc.Snapshot() == saved);
  const auto s = svc.Handle("GET", SessionPath(id));
  CHECK(s.body["state"] == "AutoRecommended");
  CHECK(s.body["audit"].size() == 3);
}

TEST_CASE("A failed save leaves the live state untouched") {
  TempDir dir;
  Service svc(std::make_unique<store::FileStore>(dir.path()));
  Client call{svc};
  const auto id = call.NewSession();
  const auto before = svc.Snapshot();
  fs::remove(dir.path() / "sessions.json");
  fs::create_directories(dir.path() / "sessions.json" / "blocker");
  const auto r = call("POST", SessionPath(id, "situation"), Situation(1.2, 1.2, 10, 3));
  CHECK(r.status == 500);
  CHECK(r.body["code"] == "storage_io");
  CHECK(svc.Snapshot() == before);
}

TEST_CASE("A bearer token guards everything but health") {
  api::ServiceOptions options;
  options.token = "s3cret";
  Service svc(workflow::SystemState{}, options);
  CHECK(svc.Handle("GET", "/api/health").status == 200);
  const auto denied = svc.Handle("POST", "/api/sessions");
  CHECK(denied.status == 401);
  CHECK(denied.body["code"] == "unauthorized");
  CHECK(svc.Handle("POST", "/api/sessions", "", "Bearer wrong").status == 401);
  CHECK(svc.Handle("POST", "/api/sessions", "", "Bearer s3cret").status == 201);
}

TEST_CASE("Scenario and config administration") {
  Service svc;
  Client call{svc};
  CHECK(call("GET", "/api/scenarios").body.size() == 4);
  const auto added =
      call("POST", "/api/scenarios",
           {{"id", "S5"}, {"name", "100% inspection"}, {"parameters", {{"n", "all"}}}});
  CHECK(added.status == 201);
  CHECK(call("PUT", "/api/scenarios/S5", {{"name", "Full inspection"}}).body["name"] ==
        "Full inspection");
  const auto cfg = call("PUT", "/api/config", {{"attribute_weights", {{"ncr", 0.5}}}});
  CHECK(cfg.body["attribute_weights"]["ncr"] == 0.5);
  CHECK(cfg.body["attribute_weights"]["cp"] == 1.0);
  CHECK(cfg.body["threshold"] == 10.0);
}

TEST_CASE("JSON subset matching") {
  std::string where;
  CHECK(api::JsonSubset(json{{"a", 1}}, json{{"a", 1.0000000001}, {"b", 2}}, 1e-9));
  CHECK_FALSE(api::JsonSubset(json{{"a", 1}}, json{{"a", 1.1}}, 1e-9, &where));
  CHECK(where == "/a: expected 1, got 1.1");
  CHECK_FALSE(api::JsonSubset(json{{"a", {1, 2}}}, json{{"a", {1, 2, 3}}}, 0));
  CHECK_FALSE(api::JsonSubset(json{{"z", "x"}}, json::object(), 0, &where));
  CHECK(where == "/z: missing");
  CHECK(api::JsonSubset(json{{"z", nullptr}}, json::object(), 0));
}

TEST_CASE("Replay reports failed expectations and unbound variables") {
  Service svc;
  std::istringstream script(
      "# comment\n"
      R"({"method":"POST","path":"/api/sessions","expect_status":201,"bind":{"s":"/id"}})"
      "\n"
      R"({"method":"GET","path":"/api/sessions/{s}","expect":{"state":"Closed"}})"
      "\n"
      R"({"method":"GET","path":"/api/sessions/{t}"})"
      "\n"
      R"({"method":"POST","path":"/api/sessions/{s}/apply"})"
      "\n"
      R"({"method":"POST","path":"/api/sessions/{s}/apply","expect_status":409})"
      "\n");
  std::ostringstream log;
  const auto report = api::RunReplay(script, svc, log);
  CHECK(report.steps == 5);
  CHECK(report.failures == 3);
  CHECK(log.str().find("{t} is not bound") != std::string::npos);
}

TEST_CASE("Live HTTP round trip") {
  Service svc;
  api::HttpServer server(svc);
  const int port = server.Bind("127.0.0.1", 0);
  std::thread runner([&] { server.Run(); });
  server.WaitUntilReady();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "ok");

  auto created = client.Post("/api/sessions", "", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto id = json::parse(created->body)["id"].get<std::int64_t>();
  auto sit = client.Post(SessionPath(id, "situation"), Situation(1.2, 1.2, 10, 3).dump(),
                         "application/json");
  REQUIRE(sit);
  CHECK(sit->get_header_value("Content-Type") == "application/json");
  CHECK(json::parse(sit->body)["state"] == "ManualRequired");

  auto missing = client.Get("/not-api");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "not_found");

  server.Stop();
  runner.join();
}
