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

#include "cplan/api/replay.h"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace cplan::api {

namespace {

bool Match(const json& expected, const json& actual, double tolerance, const std::string& at,
           std::string* where) {
  auto fail = [&](const std::string& why) {
    if (where) *where = (at.empty() ? "/" : at) + ": " + why;
    return false;
  };
  if (expected.is_number() && actual.is_number()) {
    const double e = expected.get<double>();
    const double a = actual.get<double>();
    if (std::fabs(e - a) <= tolerance) return true;
    return fail("expected " + expected.dump() + ", got " + actual.dump());
  }
  if (expected.is_object()) {
    if (!actual.is_object()) return fail("expected an object, got " + actual.dump());
    for (const auto& [key, value] : expected.items()) {
      auto it = actual.find(key);
      const std::string child = at + "/" + key;
      if (it == actual.end()) {
        if (value.is_null()) continue;
        if (where) *where = child + ": missing";
        return false;
      }
      if (!Match(value, *it, tolerance, child, where)) return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) {
      return fail("expected " + expected.dump() + ", got " + actual.dump());
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!Match(expected[i], actual[i], tolerance, at + "/" + std::to_string(i), where)) {
        return false;
      }
    }
    return true;
  }
  if (expected == actual) return true;
  return fail("expected " + expected.dump() + ", got " + actual.dump());
}

std::string Substitute(const std::string& text, const std::map<std::string, json>& vars,
                       std::string* unbound) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto open = text.find('{', i);
    const auto close = open == std::string::npos ? open : text.find('}', open);
    if (close == std::string::npos) {
      out += text.substr(i);
      break;
    }
    const std::string name = text.substr(open + 1, close - open - 1);
    out += text.substr(i, open - i);
    auto it = vars.find(name);
    if (it == vars.end()) {
      if (unbound && unbound->empty()) *unbound = name;
      out += text.substr(open, close - open + 1);
    } else {
      out += it->second.is_string() ? it->second.get<std::string>() : it->second.dump();
    }
    i = close + 1;
  }
  return out;
}

json SubstituteBody(const json& body, const std::map<std::string, json>& vars,
                    std::string* unbound) {
  if (body.is_string()) {
    const std::string s = body;
    if (s.size() > 2 && s.front() == '{' && s.back() == '}') {
      auto it = vars.find(s.substr(1, s.size() - 2));
      if (it != vars.end()) return it->second;
    }
    return Substitute(s, vars, unbound);
  }
  if (body.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : body.items()) out[k] = SubstituteBody(v, vars, unbound);
    return out;
  }
  if (body.is_array()) {
    json out = json::array();
    for (const auto& v : body) out.push_back(SubstituteBody(v, vars, unbound));
    return out;
  }
  return body;
}

}  // namespace

bool JsonSubset(const json& expected, const json& actual, double tolerance, std::string* where) {
  return Match(expected, actual, tolerance, "", where);
}

ReplayReport RunReplay(std::istream& script, Service& service, std::ostream& log,
                       const std::string& authorization) {
  ReplayReport report;
  std::map<std::string, json> vars;
  std::string line;
  int line_no = 0;
  while (std::getline(script, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    ++report.steps;
    const std::string tag = "line " + std::to_string(line_no);
    auto fail = [&](const std::string& why) {
      ++report.failures;
      log << "FAIL " << tag << ": " << why << "\n";
    };

    const json step = json::parse(line, nullptr, false);
    if (step.is_discarded() || !step.is_object()) {
      fail("not a JSON object");
      continue;
    }
    const std::string label = step.value("name", std::string());
    const std::string method = step.value("method", std::string("GET"));
    const auto path_it = step.find("path");
    if (path_it == step.end() || !path_it->is_string()) {
      fail("\"path\" is required");
      continue;
    }
    std::string unbound;
    const std::string path = Substitute(*path_it, vars, &unbound);
    std::string body;
    if (auto b = step.find("body"); b != step.end() && !b->is_null()) {
      body = SubstituteBody(*b, vars, &unbound).dump();
    }
    if (!unbound.empty()) {
      fail("variable {" + unbound + "} is not bound");
      continue;
    }

    const Response r = service.Handle(method, path, body, authorization);
    const std::string what = method + " " + path + " -> " + std::to_string(r.status) +
                             (label.empty() ? "" : " (" + label + ")");

    if (auto es = step.find("expect_status"); es != step.end()) {
      if (*es != r.status) {
        fail(what + ": expected status " + es->dump() + "; body " + r.body.dump());
        continue;
      }
    } else if (r.status < 200 || r.status > 299) {
      fail(what + ": unexpected status; body " + r.body.dump());
      continue;
    }
    if (auto ex = step.find("expect"); ex != step.end()) {
      std::string where;
      const double tol = step.value("tolerance", 1e-9);
      std::string ignored;
      if (!JsonSubset(SubstituteBody(*ex, vars, &ignored), r.body, tol, &where)) {
        fail(what + ": " + where);
        continue;
      }
    }
    bool bound = true;
    if (auto bind = step.find("bind"); bind != step.end() && bind->is_object()) {
      for (const auto& [name, pointer] : bind->items()) {
        try {
          vars[name] = r.body.at(json::json_pointer(pointer.get<std::string>()));
        } catch (const json::exception&) {
          fail(what + ": cannot bind " + name + " to " + pointer.dump());
          bound = false;
          break;
        }
      }
    }
    if (bound) log << "ok   " << tag << ": " << what << "\n";
  }
  return report;
}

}  // namespace cplan::api
