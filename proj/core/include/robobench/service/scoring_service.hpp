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

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "robobench/manifest.hpp"
#include "robobench/params.hpp"
#include "robobench/score_table.hpp"
#include "robobench/service/journal.hpp"

namespace robobench::service
{

namespace fs = std::filesystem;

struct TrackConfig
{
  fs::path manifest;
  /// Directory that relative prediction paths (grid and depth tracks) resolve
  /// against. Defaults to the manifest's directory.
  fs::path submission_root;
};

/// JSON config file; relative paths resolve against the file's directory.
///
///   {
///     "bind": "127.0.0.1", "port": 8080,
///     "journal": "state/journal.rbj", "snapshot": "state/snapshot.rbs",
///     "snapshot_every": 100, "daily_limit": 5, "workers": 1,
///     "queue_capacity": 1024, "seed": 0, "params": null,
///     "tracks": {"bev_detection": {"manifest": "gt/manifest.json"}},
///     "teams": {"team-a": "token-a"}
///   }
struct ServiceConfig
{
  std::string bind = "127.0.0.1";
  int port = 8080;
  fs::path journal = "journal.rbj";
  fs::path snapshot = "snapshot.rbs";
  std::size_t snapshot_every = 100;
  std::size_t daily_limit = 5;
  unsigned workers = 1;
  std::size_t queue_capacity = 1024;
  std::uint64_t seed = 0;
  std::optional<fs::path> params;
  std::map<Track, TrackConfig> tracks;
  /// team -> static bearer token. Empty: no authentication.
  std::map<std::string, std::string> teams;
  /// Sleeps before each scoring job; lets tests kill the process mid-scoring.
  unsigned debug_scoring_delay_ms = 0;

  static ServiceConfig parse(std::string_view text, const fs::path & base_dir);
  static ServiceConfig load(const fs::path & path);
};

enum class Status { queued, scoring, scored, failed };
std::string_view format_status(Status s);

struct SubmissionRecord
{
  std::string id;
  std::string team;
  std::string method;
  Track track = Track::bev_detection;
  std::string received_at;  // RFC 3339 UTC, wall clock of the server
  Status status = Status::queued;
  /// Exact ScoreTable::to_json() bytes when scored.
  std::optional<std::string> score_table_json;
  std::shared_ptr<const ScoreTable> score_table;
  std::optional<std::string> failure_reason;

  /// {"submission_id", "team", "method", "track", "received_at", "status",
  ///  "score_table" (object or null), "failure_reason" (string or null)}
  std::string to_json() const;
};

struct SubmitOutcome
{
  enum class Kind { accepted, bad_request, unauthorized, not_found, rate_limited, unavailable };
  Kind kind = Kind::accepted;
  std::string id;
  std::string message;
};

struct LeaderboardEntry
{
  std::string submission_id;
  std::shared_ptr<const ScoreTable> table;
};

/// Accepts submissions, scores them on a worker pool and persists every state
/// change in the journal before it becomes visible. All mutations go through
/// one writer lock; readers see an immutable snapshot of the index.
class ScoringService
{
public:
  explicit ScoringService(ServiceConfig cfg);
  ~ScoringService();
  ScoringService(const ScoringService &) = delete;
  ScoringService & operator=(const ScoringService &) = delete;

  SubmitOutcome submit(
    std::string_view track, std::string payload, const std::optional<std::string> & bearer_token);

  std::optional<SubmissionRecord> get(const std::string & id) const;
  /// Best scored submission per team, ranked. nullopt for an unknown track.
  std::optional<std::vector<LeaderboardEntry>> leaderboard(std::string_view track) const;

  /// Blocks until the queue is empty and no job is running.
  void wait_idle();
  void stop();

  const ServiceConfig & config() const { return cfg_; }
  std::size_t num_records() const;

private:
  struct Index
  {
    std::map<std::string, std::shared_ptr<const SubmissionRecord>> records;
    std::vector<std::string> order;  // arrival order
  };

  struct TrackState
  {
    Manifest manifest;
    fs::path submission_root;
  };

  void recover();
  void apply_event(Index & idx, std::string_view payload, bool replay);
  void commit(const std::string & event_json);  // caller holds writer_mu_
  std::shared_ptr<const Index> snapshot() const;
  void maybe_write_snapshot();
  void worker_loop();
  void score(const std::string & id);

  ServiceConfig cfg_;
  ParamsTable params_;
  std::map<Track, TrackState> tracks_;
  std::unique_ptr<Journal> journal_;

  mutable std::mutex writer_mu_;  // serializes journal appends and index swaps
  std::map<std::string, std::string> payloads_;  // pending submissions
  std::size_t events_since_snapshot_ = 0;
  std::size_t events_total_ = 0;  // journal events reflected in working_
  // Index being built by the writer; published copies are immutable.
  Index working_;

  mutable std::mutex publish_mu_;
  std::shared_ptr<const Index> published_;

  std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::condition_variable idle_cv_;
  std::deque<std::string> queue_;
  std::set<std::string> in_flight_;
  std::size_t running_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace robobench::service
