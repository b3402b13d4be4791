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

#include "robobench/service/http_server.hpp"

// httplib's default backlog of 5 refuses bursts of concurrent uploads.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include <json.hpp>

namespace robobench::service
{

namespace
{

using ojson = nlohmann::ordered_json;

constexpr std::size_t kMaxPayloadBytes = 256u << 20;

void send_json(httplib::Response & res, int status, const std::string & body)
{
  res.status = status;
  res.set_content(body, "application/json");
}

void send_error(httplib::Response & res, int status, const std::string & message)
{
  ojson doc;
  doc["error"] = message;
  send_json(res, status, doc.dump());
}

std::optional<std::string> bearer_token(const httplib::Request & req)
{
  const std::string h = req.get_header_value("Authorization");
  constexpr std::string_view prefix = "Bearer ";
  if (h.size() <= prefix.size() || h.compare(0, prefix.size(), prefix) != 0) {
    return std::nullopt;
  }
  return h.substr(prefix.size());
}

int status_of(SubmitOutcome::Kind k)
{
  switch (k) {
    case SubmitOutcome::Kind::accepted: return 202;
    case SubmitOutcome::Kind::bad_request: return 400;
    case SubmitOutcome::Kind::unauthorized: return 401;
    case SubmitOutcome::Kind::not_found: return 404;
    case SubmitOutcome::Kind::rate_limited: return 429;
    case SubmitOutcome::Kind::unavailable: return 503;
  }
  return 500;
}

}  // namespace

struct HttpServer::Impl
{
  ScoringService & service;
  httplib::Server server;

  explicit Impl(ScoringService & s) : service(s)
  {
    server.set_payload_max_length(kMaxPayloadBytes);

    server.Post(R"(/api/v1/tracks/([A-Za-z0-9_]+)/submissions)", [this](const httplib::Request & req, httplib::Response & res) {
      const SubmitOutcome out = service.submit(req.matches[1].str(), req.body, bearer_token(req));
      if (out.kind != SubmitOutcome::Kind::accepted) {
        send_error(res, status_of(out.kind), out.message);
        return;
      }
      ojson doc;
      doc["submission_id"] = out.id;
      doc["status"] = "queued";
      send_json(res, 202, doc.dump());
    });

    server.Get(R"(/api/v1/submissions/([A-Za-z0-9-]+))", [this](const httplib::Request & req, httplib::Response & res) {
      const auto rec = service.get(req.matches[1].str());
      if (!rec) {
        send_error(res, 404, "unknown submission " + req.matches[1].str());
        return;
      }
      send_json(res, 200, rec->to_json());
    });

    server.Get(R"(/api/v1/tracks/([A-Za-z0-9_]+)/leaderboard)", [this](const httplib::Request & req, httplib::Response & res) {
      const auto board = service.leaderboard(req.matches[1].str());
      if (!board) {
        send_error(res, 404, "unknown track " + req.matches[1].str());
        return;
      }
      ojson doc;
      doc["track"] = req.matches[1].str();
      doc["entries"] = ojson::array();
      std::size_t rank = 1;
      for (const auto & e : *board) {
        ojson entry;
        entry["rank"] = rank++;
        entry["submission_id"] = e.submission_id;
        entry["score_table"] = ojson::parse(e.table->to_json());
        doc["entries"].push_back(std::move(entry));
      }
      send_json(res, 200, doc.dump());
    });

    server.Get("/api/v1/healthz", [this](const httplib::Request &, httplib::Response & res) {
      ojson doc;
      doc["status"] = "ok";
      doc["submissions"] = service.num_records();
      send_json(res, 200, doc.dump());
    });

    server.set_exception_handler([](const httplib::Request &, httplib::Response & res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception & e) {
        send_error(res, 500, e.what());
      } catch (...) {
        send_error(res, 500, "internal error");
      }
    });
  }
};

HttpServer::HttpServer(ScoringService & service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string & host, int port)
{
  if (port == 0) {
    return impl_->server.bind_to_any_port(host);
  }
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace robobench::service
