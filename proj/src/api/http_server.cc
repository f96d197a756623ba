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

#include "cplan/api/http_server.h"

#include "httplib.h"

namespace cplan::api {

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service, std::string static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->service.Handle(req.method, req.target, req.body,
                                             req.get_header_value("Authorization"));
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const std::string api = R"(/api(/.*)?)";
  srv.Get(api, handler);
  srv.Post(api, handler);
  srv.Put(api, handler);
  srv.Patch(api, handler);
  srv.Delete(api, handler);
  if (!static_dir.empty() && !srv.set_mount_point("/", static_dir)) {
    throw Error(ErrorCode::kStorageIo, "static directory not found: " + static_dir);
  }
  srv.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const Error e(res.status == 404 ? ErrorCode::kNotFound : ErrorCode::kValidationFailed,
                  "no route for " + req.method + " " + req.path);
    res.set_content(ErrorBody(e).dump(), "application/json");
  });
  srv.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unknown failure";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(ErrorBody(Error(ErrorCode::kInternal, what)).dump(), "application/json");
      });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    const int bound = srv.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kStorageIo, "cannot bind to " + host);
    return bound;
  }
  if (!srv.bind_to_port(host, port)) {
    throw Error(ErrorCode::kStorageIo, "cannot bind to " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace cplan::api
