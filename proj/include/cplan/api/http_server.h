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

#ifndef CPLAN_API_HTTP_SERVER_H_
#define CPLAN_API_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "cplan/api/service.h"

namespace cplan::api {

inline constexpr int kDefaultPort = 8642;

// Serves a Service over HTTP: /api/... goes to Service::Handle, anything else
// to the optional static directory.
class HttpServer {
 public:
  explicit HttpServer(Service& service, std::string static_dir = "");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // Error(kStorageIo) when binding fails.
  int Bind(const std::string& host, int port);
  // Blocks until Stop() is called from another thread.
  void Run();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cplan::api

#endif  // CPLAN_API_HTTP_SERVER_H_
