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

// cplan: command-line front end of the control-plan decision service.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cplan/api/http_server.h"
#include "cplan/api/replay.h"
#include "cplan/api/service.h"
#include "cplan/cbr/case_base.h"
#include "cplan/error.h"
#include "cplan/mcdm/choquet.h"
#include "cplan/mcdm/fit.h"
#include "cplan/store/codec.h"
#include "cplan/store/store.h"

namespace {

using cplan::Error;
using cplan::ErrorCode;
using cplan::api::json;
using cplan::api::Service;

constexpr const char* kDefaultDataDir = "cplan-data";

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::kValidationFailed, path + ": not valid JSON",
                {{path, "not valid JSON"}});
  }
  return j;
}

std::unique_ptr<Service> OpenService(const std::string& data_dir, bool memory,
                                     cplan::api::ServiceOptions options = {}) {
  if (memory) return std::make_unique<Service>(cplan::workflow::SystemState{}, std::move(options));
  auto store = std::make_unique<cplan::store::FileStore>(data_dir);
  auto svc = std::make_unique<Service>(std::move(store), std::move(options));
  for (const auto& w : svc->warnings()) std::cerr << "warning: " << w << "\n";
  return svc;
}

// Prints an API response; non-2xx bodies go to stderr and become exit code 1.
int Emit(const cplan::api::Response& r) {
  if (r.status >= 200 && r.status < 300) {
    std::cout << r.body.dump(2) << "\n";
    return 0;
  }
  std::cerr << r.body.dump() << "\n";
  return 1;
}

std::string Format(double v, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

void PrintRanking(const cplan::mcdm::EvaluationTable& table,
                  const std::vector<cplan::mcdm::ScoredAlternative>& ranking) {
  std::cout << std::left << std::setw(12) << "Scenario";
  for (const auto& c : table.criteria().names()) std::cout << std::setw(10) << c;
  std::cout << std::setw(10) << "Score"
            << "Rank\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    std::cout << std::setw(12) << ranking[i].id;
    for (double v : table.rows()[i]) std::cout << std::setw(10) << Format(v, 3);
    std::cout << std::setw(10) << Format(ranking[i].score) << ranking[i].rank << "\n";
  }
  for (const auto& r : ranking) {
    if (r.rank == 1) std::cout << "The best control scenario is: " << r.id << "\n";
  }
}

std::pair<std::string, int> ParseListen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) return {listen, cplan::api::kDefaultPort};
  return {listen.substr(0, colon), std::stoi(listen.substr(colon + 1))};
}

json ParseSetting(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  return j.is_discarded() ? json(text) : j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Control-plan decision support: case-based recommendation with AHP/Choquet fallback"};
  app.require_subcommand(1);

  std::string data_dir = kDefaultDataDir;
  app.add_option("--data-dir", data_dir, "State directory")
      ->envname("CPLAN_DATA_DIR")
      ->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
  std::string listen = "127.0.0.1:" + std::to_string(cplan::api::kDefaultPort);
  std::string static_dir;
  std::string token;
  serve->add_option("--listen", listen, "host:port")
      ->envname("CPLAN_LISTEN")
      ->capture_default_str();
  serve->add_option("--static", static_dir, "Directory of UI files served at /")
      ->envname("CPLAN_STATIC_DIR");
  serve->add_option("--token", token, "Require this bearer token")->envname("CPLAN_TOKEN");

  auto* recommend = app.add_subcommand("recommend", "One-shot retrieval against the case base");
  double cp = 0, cpk = 0, ncr = 0, encr = 0;
  std::optional<double> threshold;
  recommend->add_option("--cp", cp)->required();
  recommend->add_option("--cpk", cpk)->required();
  recommend->add_option("--ncr", ncr, "Nonconformity rate, percent")->required();
  recommend->add_option("--encr", encr, "Estimated nonconformity rate, percent")->required();
  recommend->add_option("--threshold", threshold, "Override the configured threshold");

  auto* evaluate = app.add_subcommand("evaluate", "Rank alternatives by Choquet integral");
  std::string table_file, capacity_file, targets_file;
  bool as_json = false;
  evaluate->add_option("--table", table_file, "Evaluation table JSON")->required();
  evaluate->add_option("--capacity", capacity_file, "Capacity JSON (values or mobius)")->required();
  evaluate->add_flag("--json", as_json, "Print JSON instead of a table");

  auto* fit = app.add_subcommand("fit-capacity", "Find a capacity reproducing target scores");
  double fit_tolerance = cplan::mcdm::FitOptions{}.tolerance;
  fit->add_option("--table", table_file, "Evaluation table JSON")->required();
  fit->add_option("--targets", targets_file, "Target scores JSON: array or {id: score}")
      ->required();
  fit->add_option("--tolerance", fit_tolerance)->capture_default_str();

  auto* cases = app.add_subcommand("case", "Inspect or edit the case base");
  cases->require_subcommand(1);
  auto* case_list = cases->add_subcommand("list", "Print all cases");
  auto* case_import = cases->add_subcommand("import", "Add cases from a JSON file");
  std::string case_file;
  case_import->add_option("file", case_file, "One case object or an array of cases")->required();
  auto* case_export = cases->add_subcommand("export", "Write all cases as JSON");
  std::string out_file;
  case_export->add_option("--out", out_file, "Output file (default: standard output)");

  auto* config = app.add_subcommand("config", "Read or change retrieval settings");
  config->require_subcommand(1);
  auto* config_get = config->add_subcommand("get", "Print the configuration");
  auto* config_set = config->add_subcommand("set", "Change settings, e.g. threshold=8");
  std::vector<std::string> settings;
  config_set->add_option("settings", settings, "key=value pairs")->required();

  auto* replay = app.add_subcommand("replay", "Run an NDJSON request script");
  std::string script_file;
  bool memory = false;
  bool quiet = false;
  replay->add_option("script", script_file, "Script file")->required();
  replay->add_flag("--memory", memory, "Start from an empty in-memory state");
  replay->add_flag("--quiet", quiet, "Only report failures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      cplan::api::ServiceOptions options;
      if (!token.empty()) options.token = token;
      auto svc = OpenService(data_dir, false, options);
      cplan::api::HttpServer server(*svc, static_dir);
      const auto [host, port] = ParseListen(listen);
      const int bound = server.Bind(host, port);
      std::cerr << "cplan listening on http://" << host << ":" << bound << " (data: " << data_dir
                << ")\n";
      server.Run();
      return 0;
    }
    if (*recommend) {
      auto svc = OpenService(data_dir, false);
      const auto state = svc->Snapshot();
      const cplan::cbr::QualitySituation target{cp, cpk, ncr, encr};
      cplan::cbr::RequireValid(target);
      auto cfg = state.config.retrieval;
      if (threshold) cfg.threshold = *threshold;
      if (const auto errors = cplan::cbr::ValidateConfig(cfg); !errors.empty()) {
        throw Error(ErrorCode::kValidationFailed, errors[0].field + ": " + errors[0].message,
                    errors);
      }
      const auto hit = cplan::cbr::Retrieve(target, state.cases, cfg);
      if (!hit) {
        std::cout << "no similar case\n";
        return 0;
      }
      const auto rec = cplan::cbr::Adapt(*hit, state.cases);
      std::cout << "scenario " << rec.scenario_id << " distance " << json(rec.distance).dump()
                << " source case " << rec.source_case_id << "\n";
      return 0;
    }
    if (*evaluate) {
      const auto table = cplan::store::TableFromJson(ReadJsonFile(table_file), "table");
      const auto capacity = cplan::store::CapacityFromJson(ReadJsonFile(capacity_file), "capacity");
      const auto ranking = cplan::mcdm::RankAlternatives(table, capacity);
      if (as_json) {
        std::cout << cplan::store::ToJson(ranking).dump(2) << "\n";
      } else {
        PrintRanking(table, ranking);
      }
      return 0;
    }
    if (*fit) {
      const auto table = cplan::store::TableFromJson(ReadJsonFile(table_file), "table");
      const json t = ReadJsonFile(targets_file);
      std::vector<double> targets;
      if (t.is_array()) {
        targets = t.get<std::vector<double>>();
      } else {
        for (const auto& id : table.alternatives()) {
          if (!t.contains(id)) {
            throw Error(ErrorCode::kValidationFailed, "targets: missing " + id, {{id, "missing"}});
          }
          targets.push_back(t[id].get<double>());
        }
      }
      const auto result = cplan::mcdm::FitCapacity(table, targets, {fit_tolerance});
      json out = cplan::store::ToJson(result.capacity);
      out["max_deviation"] = result.max_deviation;
      out["feasible"] = result.feasible;
      out["scores"] = result.scores;
      std::cout << out.dump(2) << "\n";
      return result.feasible ? 0 : 3;
    }
    if (*case_list) return Emit(OpenService(data_dir, false)->Handle("GET", "/api/cases"));
    if (*case_export) {
      const auto r = OpenService(data_dir, false)->Handle("GET", "/api/cases");
      if (out_file.empty()) return Emit(r);
      std::ofstream(out_file) << r.body.dump(2) << "\n";
      return 0;
    }
    if (*case_import) {
      auto svc = OpenService(data_dir, false);
      json input = ReadJsonFile(case_file);
      if (!input.is_array()) input = json::array({input});
      for (const auto& c : input) {
        if (const int rc = Emit(svc->Handle("POST", "/api/cases", c.dump())); rc != 0) return rc;
      }
      return 0;
    }
    if (*config_get) return Emit(OpenService(data_dir, false)->Handle("GET", "/api/config"));
    if (*config_set) {
      json patch = json::object();
      for (const auto& s : settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorCode::kValidationFailed, "expected key=value, got '" + s + "'",
                      {{s, "expected key=value"}});
        }
        json::json_pointer ptr("/" + s.substr(0, eq));
        for (std::size_t dot; (dot = ptr.back().find('.')) != std::string::npos;) {
          const std::string key = ptr.back();
          ptr.pop_back();
          ptr /= key.substr(0, dot);
          ptr /= key.substr(dot + 1);
        }
        patch[ptr] = ParseSetting(s.substr(eq + 1));
      }
      return Emit(OpenService(data_dir, false)->Handle("PUT", "/api/config", patch.dump()));
    }
    if (*replay) {
      std::ifstream in(script_file);
      if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + script_file);
      auto svc = OpenService(data_dir, memory);
      std::ostringstream log;
      const auto report = cplan::api::RunReplay(in, *svc, log);
      std::istringstream lines(log.str());
      for (std::string line; std::getline(lines, line);) {
        if (!quiet || line.rfind("FAIL", 0) == 0) std::cout << line << "\n";
      }
      std::cout << report.steps - report.failures << "/" << report.steps << " steps passed\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << cplan::api::ErrorBody(e).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << cplan::api::ErrorBody(Error(ErrorCode::kInternal, e.what())).dump() << "\n";
    return 1;
  }
  return 0;
}
