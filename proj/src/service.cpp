// Copyright 2026 The Chronoscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronoscope/service.hpp"

#include "chronoscope/error.hpp"
#include "httplib.h"

using nlohmann::json;

namespace chronoscope {

struct Service::Impl {
  std::shared_ptr<const QueryEngine> engine;
  ServiceOptions options;
  httplib::Server server;
};

namespace {

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json ErrorBody(const std::string &message) {
  return {{"schema_version", kSchemaVersion}, {"error", message}};
}

}  // namespace

Service::Service(std::shared_ptr<const QueryEngine> engine, ServiceOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->engine = std::move(engine);
  impl_->options = std::move(options);
  httplib::Server &server = impl_->server;

  for (const std::string &endpoint : QueryEndpoints()) {
    server.Get("/api/" + endpoint, [this, endpoint](const httplib::Request &req,
                                                    httplib::Response &res) {
      QueryParams params;
      for (const auto &[key, value] : req.params) {
        if (!params.emplace(key, value).second) {
          Reply(res, 400, ErrorBody("parameter '" + key + "' given more than once"));
          return;
        }
      }
      try {
        Reply(res, 200, RunQuery(*impl_->engine, endpoint, params));
      } catch (const UsageError &e) {
        Reply(res, 400, ErrorBody(e.what()));
      } catch (const NotFoundError &e) {
        json body = ErrorBody(e.what());
        body["candidates"] = e.candidates();
        Reply(res, 404, body);
      } catch (const std::exception &e) {
        Reply(res, 500, ErrorBody(e.what()));
      }
    });
  }

  server.set_error_handler([](const httplib::Request &req, httplib::Response &res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    Reply(res, res.status, ErrorBody("no route for " + req.method + " " + req.path));
    return httplib::Server::HandlerResponse::Handled;
  });

  if (!impl_->options.cors_origin.empty()) {
    server.set_post_routing_handler([this](const httplib::Request &, httplib::Response &res) {
      res.set_header("Access-Control-Allow-Origin", impl_->options.cors_origin);
      res.set_header("Vary", "Origin");
    });
  }
}

Service::~Service() { Stop(); }

int Service::Bind() {
  const ServiceOptions &o = impl_->options;
  if (o.port == 0) {
    port_ = impl_->server.bind_to_any_port(o.bind);
    if (port_ < 0) throw DataError("cannot bind " + o.bind);
  } else {
    if (!impl_->server.bind_to_port(o.bind, o.port)) {
      throw DataError("cannot bind " + o.bind + ":" + std::to_string(o.port));
    }
    port_ = o.port;
  }
  return port_;
}

void Service::Run() { impl_->server.listen_after_bind(); }

void Service::WaitUntilReady() const { impl_->server.wait_until_ready(); }

void Service::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace chronoscope
