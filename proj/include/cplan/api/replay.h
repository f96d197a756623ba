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

#ifndef CPLAN_API_REPLAY_H_
#define CPLAN_API_REPLAY_H_

#include <iosfwd>
#include <string>

#include "cplan/api/service.h"

namespace cplan::api {

// A replay script is NDJSON, one request per line:
//
//   {"name": "...", "method": "POST", "path": "/api/sessions/{sid}/situation",
//    "body": {...}, "expect_status": 200, "expect": {...},
//    "bind": {"sid": "/id"}, "tolerance": 1e-9}
//
// Blank lines and lines starting with '#' are skipped. "{var}" inside the
// path, body strings and expectation strings is replaced by a value bound by an earlier
// step; a body string that is exactly "{var}" takes the bound JSON value
// with its type. "expect" is matched as a subset of the response body
// (objects by key, arrays element-wise with equal length, numbers within
// the tolerance). Without "expect_status" any 2xx status passes. "bind"
// maps variable names to JSON pointers into the response body.
struct ReplayReport {
  int steps = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};

ReplayReport RunReplay(std::istream& script, Service& service, std::ostream& log,
                       const std::string& authorization = "");

// True when `expected` is a subset of `actual`; on mismatch `where` receives
// a JSON pointer and a description.
bool JsonSubset(const json& expected, const json& actual, double tolerance,
                std::string* where = nullptr);

}  // namespace cplan::api

#endif  // CPLAN_API_REPLAY_H_
