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

#ifndef CHRONOSCOPE_SERVICE_HPP_
#define CHRONOSCOPE_SERVICE_HPP_

#include <memory>
#include <string>

#include "chronoscope/query.hpp"

namespace chronoscope {

struct ServiceOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Value for Access-Control-Allow-Origin; no CORS headers when empty.
  std::string cors_origin;
};

// Read-only JSON service over a loaded QueryEngine. Every query endpoint is
// served as GET /api/<name>; see RunQuery for parameters. Errors come back
// as {"schema_version", "error", "candidates"?} with status 400 (bad
// parameters), 404 (unknown name) or 500 (data fault).
class Service {
 public:
  Service(std::shared_ptr<const QueryEngine> engine, ServiceOptions options);
  ~Service();

  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Binds the listening socket and returns the port. Throws DataError when
  // the address cannot be bound.
  int Bind();
  // Serves requests until Stop(). Bind() must have succeeded.
  void Run();
  // Blocks until Run() is accepting connections.
  void WaitUntilReady() const;
  // Stops accepting connections; Run() returns once in-flight requests end.
  void Stop();

  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace chronoscope

#endif  // CHRONOSCOPE_SERVICE_HPP_
