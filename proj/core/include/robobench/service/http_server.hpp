// Copyright 2026 The RoboBench Authors
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

#pragma once

#include <functional>
#include <memory>
#include <string>

#include "robobench/service/scoring_service.hpp"

namespace robobench::service
{

/// HTTP/1.1 JSON API over a ScoringService:
///
///   POST /api/v1/tracks/{track}/submissions   body: submission JSON-lines
///   GET  /api/v1/submissions/{id}
///   GET  /api/v1/tracks/{track}/leaderboard
///   GET  /api/v1/healthz
class HttpServer
{
public:
  explicit HttpServer(ScoringService & service);
  ~HttpServer();

  /// Binds (port 0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string & host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace robobench::service
