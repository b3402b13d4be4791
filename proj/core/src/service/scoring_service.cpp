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

#include "robobench/service/scoring_service.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <random>

#include "../io/json_fields.hpp"
#include "robobench/harness.hpp"
#include "robobench/io.hpp"
#include "robobench/submission.hpp"

namespace robobench::service
{

namespace
{

using io::detail::json;
using ojson = nlohmann::ordered_json;

std::string new_uuid()
{
  thread_local std::mt19937_64 gen{[] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }()};
  std::uint64_t hi = gen();
  std::uint64_t lo = gen();
  hi = (hi & ~0xF000ULL) | 0x4000ULL;  // version 4
  lo = (lo & ~(3ULL << 62)) | (2ULL << 62);  // RFC 4122 variant
  char buf[37];
  std::snprintf(
    buf, sizeof buf, "%08x-%04x-%04x-%04x-%012llx", static_cast<unsigned>(hi >> 32),
    static_cast<unsigned>((hi >> 16) & 0xFFFF), static_cast<unsigned>(hi & 0xFFFF),
    static_cast<unsigned>(lo >> 48), static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFULL));
  return buf;
}

std::string utc_now()
{
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool is_terminal(Status s) { return s == Status::scored || s == Status::failed; }

Status parse_status(std::string_view s)
{
  for (Status st : {Status::queued, Status::scoring, Status::scored, Status::failed}) {
    if (format_status(st) == s) {
      return st;
    }
  }
  throw ValidationError("unknown status '" + std::string(s) + "'");
}

fs::path resolve(const fs::path & base, const fs::path & p) { return p.is_absolute() ? p : base / p; }

}  // namespace

// ---- config ---------------------------------------------------------------

ServiceConfig ServiceConfig::parse(std::string_view text, const fs::path & base_dir)
{
  using io::detail::get_integer;
  using io::detail::get_string;
  const std::string where = "service config";
  const json doc = io::detail::parse_json(text, where);
  if (!doc.is_object()) {
    throw ValidationError(where + ": expected a JSON object");
  }
  io::detail::check_keys(
    doc,
    {"bind", "port", "journal", "snapshot", "snapshot_every", "daily_limit", "workers",
     "queue_capacity", "seed", "params", "tracks", "teams", "debug_scoring_delay_ms"},
    where);
  ServiceConfig c;
  const auto int_in = [&](const char * key, std::int64_t lo, std::int64_t hi, auto & out) {
    if (doc.contains(key)) {
      const auto v = get_integer(doc, key, where);
      if (v < lo || v > hi) {
        throw ValidationError(
          where + ": '" + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      out = static_cast<std::remove_reference_t<decltype(out)>>(v);
    }
  };
  if (doc.contains("bind")) {
    c.bind = get_string(doc, "bind", where);
  }
  int_in("port", 0, 65535, c.port);
  c.journal = resolve(base_dir, doc.contains("journal") ? get_string(doc, "journal", where) : "journal.rbj");
  c.snapshot =
    resolve(base_dir, doc.contains("snapshot") ? get_string(doc, "snapshot", where) : "snapshot.rbs");
  int_in("snapshot_every", 1, 1 << 30, c.snapshot_every);
  int_in("daily_limit", 1, 1 << 30, c.daily_limit);
  int_in("workers", 1, 256, c.workers);
  int_in("queue_capacity", 1, 1 << 30, c.queue_capacity);
  int_in("debug_scoring_delay_ms", 0, 600000, c.debug_scoring_delay_ms);
  if (doc.contains("seed")) {
    const json & s = doc["seed"];
    if (!s.is_number_unsigned()) {
      throw ValidationError(where + ": 'seed' must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("params") && !doc["params"].is_null()) {
    c.params = resolve(base_dir, get_string(doc, "params", where));
  }
  const json & tracks = io::detail::require(doc, "tracks", where);
  if (!tracks.is_object() || tracks.empty()) {
    throw ValidationError(where + ": 'tracks' must be a non-empty object");
  }
  for (auto it = tracks.begin(); it != tracks.end(); ++it) {
    const std::string tw = where + ".tracks." + it.key();
    const Track t = parse_track(it.key());
    io::detail::check_keys(*it, {"manifest", "submission_root"}, tw);
    TrackConfig tc;
    tc.manifest = resolve(base_dir, get_string(*it, "manifest", tw));
    tc.submission_root = it->contains("submission_root")
                           ? resolve(base_dir, get_string(*it, "submission_root", tw))
                           : tc.manifest.parent_path();
    c.tracks[t] = tc;
  }
  if (doc.contains("teams")) {
    const json & teams = doc["teams"];
    if (!teams.is_object()) {
      throw ValidationError(where + ": 'teams' must map team names to tokens");
    }
    for (auto it = teams.begin(); it != teams.end(); ++it) {
      if (!it->is_string() || it->get<std::string>().empty()) {
        throw ValidationError(where + ".teams." + it.key() + ": token must be a non-empty string");
      }
      c.teams[it.key()] = it->get<std::string>();
    }
  }
  return c;
}

ServiceConfig ServiceConfig::load(const fs::path & path)
{
  return parse(io::read_text_file(path), path.parent_path());
}

std::string_view format_status(Status s)
{
  switch (s) {
    case Status::queued: return "queued";
    case Status::scoring: return "scoring";
    case Status::scored: return "scored";
    case Status::failed: return "failed";
  }
  return "unknown";
}

std::string SubmissionRecord::to_json() const
{
  ojson doc;
  doc["submission_id"] = id;
  doc["team"] = team;
  doc["method"] = method;
  doc["track"] = std::string(format_track(track));
  doc["received_at"] = received_at;
  doc["status"] = std::string(format_status(status));
  doc["score_table"] = score_table_json ? ojson::parse(*score_table_json) : ojson(nullptr);
  doc["failure_reason"] = failure_reason ? ojson(*failure_reason) : ojson(nullptr);
  return doc.dump();
}

// ---- service --------------------------------------------------------------

ScoringService::ScoringService(ServiceConfig cfg)
: cfg_(std::move(cfg)), params_(resolve_params(cfg_.params))
{
  for (const auto & [track, tc] : cfg_.tracks) {
    Manifest m = load_manifest(tc.manifest);
    if (m.track != track) {
      throw ValidationError(
        "manifest " + tc.manifest.string() + " is for track " + std::string(format_track(m.track)) +
        ", configured under " + std::string(format_track(track)));
    }
    tracks_.emplace(track, TrackState{std::move(m), tc.submission_root});
  }
  journal_ = std::make_unique<Journal>(cfg_.journal);
  recover();
  for (unsigned w = 0; w < cfg_.workers; ++w) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

ScoringService::~ScoringService() { stop(); }

void ScoringService::recover()
{
  const auto & events = journal_->recovered();
  std::size_t skip = 0;
  const std::string snap = read_snapshot(cfg_.snapshot);
  if (!snap.empty()) {
    try {
      const json doc = json::parse(snap);
      const auto n = doc.at("events").get<std::size_t>();
      if (n <= events.size()) {
        Index idx;
        std::map<std::string, std::string> pending;
        for (const auto & r : doc.at("records")) {
          auto rec = std::make_shared<SubmissionRecord>();
          rec->id = r.at("id").get<std::string>();
          rec->team = r.at("team").get<std::string>();
          rec->method = r.at("method").get<std::string>();
          rec->track = parse_track(r.at("track").get<std::string>());
          rec->received_at = r.at("received_at").get<std::string>();
          rec->status = parse_status(r.at("status").get<std::string>());
          if (!r.at("score_table").is_null()) {
            rec->score_table_json = r["score_table"].get<std::string>();
            rec->score_table =
              std::make_shared<const ScoreTable>(ScoreTable::from_json(*rec->score_table_json));
          }
          if (!r.at("failure_reason").is_null()) {
            rec->failure_reason = r["failure_reason"].get<std::string>();
          }
          idx.order.push_back(rec->id);
          idx.records[rec->id] = std::move(rec);
        }
        for (auto it = doc.at("pending").begin(); it != doc.at("pending").end(); ++it) {
          pending[it.key()] = it->get<std::string>();
        }
        working_ = std::move(idx);
        payloads_ = std::move(pending);
        skip = n;
      }
    } catch (const std::exception & e) {
      std::cerr << "robobench: ignoring unreadable snapshot: " << e.what() << "\n";
      working_ = Index{};
      payloads_.clear();
      skip = 0;
    }
  }
  if (journal_->recovered_torn_tail()) {
    std::cerr << "robobench: truncated a torn journal tail\n";
  }
  for (std::size_t i = skip; i < events.size(); ++i) {
    apply_event(working_, events[i], true);
  }
  events_total_ = events.size();
  published_ = std::make_shared<const Index>(working_);

  std::lock_guard lock(queue_mu_);
  for (const auto & id : working_.order) {
    if (!is_terminal(working_.records.at(id)->status)) {
      queue_.push_back(id);
    }
  }
}

void ScoringService::apply_event(Index & idx, std::string_view payload, bool replay)
{
  json ev;
  try {
    ev = json::parse(payload);
    const std::string type = ev.at("type").get<std::string>();
    const std::string id = ev.at("id").get<std::string>();
    auto it = idx.records.find(id);
    if (type == "submitted") {
      if (it != idx.records.end()) {
        throw ValidationError("duplicate submission " + id);
      }
      auto rec = std::make_shared<SubmissionRecord>();
      rec->id = id;
      rec->team = ev.at("team").get<std::string>();
      rec->method = ev.at("method").get<std::string>();
      rec->track = parse_track(ev.at("track").get<std::string>());
      rec->received_at = ev.at("received_at").get<std::string>();
      rec->status = Status::queued;
      payloads_[id] = ev.at("payload").get<std::string>();
      idx.order.push_back(id);
      idx.records[id] = std::move(rec);
      return;
    }
    if (it == idx.records.end()) {
      throw ValidationError("event for unknown submission " + id);
    }
    auto rec = std::make_shared<SubmissionRecord>(*it->second);
    if (is_terminal(rec->status)) {
      throw ValidationError("event after terminal state for " + id);
    }
    if (type == "scoring") {
      rec->status = Status::scoring;
    } else if (type == "scored") {
      rec->status = Status::scored;
      rec->score_table_json = ev.at("score_table").get<std::string>();
      rec->score_table = std::make_shared<const ScoreTable>(ScoreTable::from_json(*rec->score_table_json));
      payloads_.erase(id);
    } else if (type == "failed") {
      rec->status = Status::failed;
      rec->failure_reason = ev.at("reason").get<std::string>();
      payloads_.erase(id);
    } else {
      throw ValidationError("unknown event type '" + type + "'");
    }
    it->second = std::move(rec);
  } catch (const std::exception & e) {
    if (!replay) {
      throw;
    }
    std::cerr << "robobench: skipping journal event: " << e.what() << "\n";
  }
}

void ScoringService::commit(const std::string & event_json)
{
  // Durable first, then visible.
  journal_->append(event_json);
  apply_event(working_, event_json, false);
  ++events_total_;
  auto published = std::make_shared<const Index>(working_);
  {
    std::lock_guard lock(publish_mu_);
    published_ = std::move(published);
  }
  maybe_write_snapshot();
}

void ScoringService::maybe_write_snapshot()
{
  if (++events_since_snapshot_ < cfg_.snapshot_every) {
    return;
  }
  events_since_snapshot_ = 0;
  ojson doc;
  doc["events"] = events_total_;
  doc["records"] = ojson::array();
  for (const auto & id : working_.order) {
    const auto & r = *working_.records.at(id);
    ojson rec;
    rec["id"] = r.id;
    rec["team"] = r.team;
    rec["method"] = r.method;
    rec["track"] = std::string(format_track(r.track));
    rec["received_at"] = r.received_at;
    rec["status"] = std::string(format_status(r.status));
    rec["score_table"] = r.score_table_json ? ojson(*r.score_table_json) : ojson(nullptr);
    rec["failure_reason"] = r.failure_reason ? ojson(*r.failure_reason) : ojson(nullptr);
    doc["records"].push_back(std::move(rec));
  }
  doc["pending"] = ojson::object();
  for (const auto & [id, payload] : payloads_) {
    doc["pending"][id] = payload;
  }
  try {
    write_snapshot(cfg_.snapshot, doc.dump());
  } catch (const std::exception & e) {
    // The journal alone is sufficient for recovery.
    std::cerr << "robobench: snapshot failed: " << e.what() << "\n";
  }
}

std::shared_ptr<const ScoringService::Index> ScoringService::snapshot() const
{
  std::lock_guard lock(publish_mu_);
  return published_;
}

SubmitOutcome ScoringService::submit(
  std::string_view track_name, std::string payload, const std::optional<std::string> & bearer_token)
{
  using Kind = SubmitOutcome::Kind;
  Track track;
  try {
    track = parse_track(track_name);
  } catch (const ValidationError & e) {
    return {Kind::not_found, "", e.what()};
  }
  auto ts = tracks_.find(track);
  if (ts == tracks_.end()) {
    return {Kind::not_found, "", "track " + std::string(track_name) + " is not served here"};
  }
  Submission sub;
  try {
    sub = parse_submission(payload, track, {ts->second.submission_root, &ts->second.manifest});
  } catch (const ValidationError & e) {
    return {Kind::bad_request, "", e.what()};
  }
  if (!cfg_.teams.empty()) {
    auto it = cfg_.teams.find(sub.header.team);
    if (it == cfg_.teams.end() || !bearer_token || *bearer_token != it->second) {
      return {Kind::unauthorized, "", "missing or wrong token for team " + sub.header.team};
    }
  }

  std::lock_guard writer(writer_mu_);
  const std::string now = utc_now();
  const std::string day = now.substr(0, 10);
  std::size_t today = 0;
  for (const auto & [id, rec] : working_.records) {
    if (rec->team == sub.header.team && rec->track == track && rec->received_at.compare(0, 10, day) == 0) {
      ++today;
    }
  }
  if (today >= cfg_.daily_limit) {
    return {Kind::rate_limited, "",
            "team " + sub.header.team + " reached the limit of " + std::to_string(cfg_.daily_limit) +
              " submissions per day"};
  }
  {
    std::lock_guard q(queue_mu_);
    if (queue_.size() >= cfg_.queue_capacity) {
      return {Kind::unavailable, "", "scoring queue is full"};
    }
  }
  const std::string id = new_uuid();
  ojson ev;
  ev["type"] = "submitted";
  ev["id"] = id;
  ev["team"] = sub.header.team;
  ev["method"] = sub.header.method;
  ev["track"] = std::string(format_track(track));
  ev["received_at"] = now;
  ev["payload"] = std::move(payload);
  commit(ev.dump());
  {
    std::lock_guard q(queue_mu_);
    queue_.push_back(id);
  }
  queue_cv_.notify_one();
  return {Kind::accepted, id, ""};
}

std::optional<SubmissionRecord> ScoringService::get(const std::string & id) const
{
  const auto idx = snapshot();
  auto it = idx->records.find(id);
  if (it == idx->records.end()) {
    return std::nullopt;
  }
  return *it->second;
}

std::optional<std::vector<LeaderboardEntry>> ScoringService::leaderboard(std::string_view track_name) const
{
  Track track;
  try {
    track = parse_track(track_name);
  } catch (const ValidationError &) {
    return std::nullopt;
  }
  if (!tracks_.contains(track)) {
    return std::nullopt;
  }
  const auto idx = snapshot();
  std::vector<ScoreTable> tables;
  std::vector<std::string> ids;
  for (const auto & id : idx->order) {
    const auto & r = *idx->records.at(id);
    if (r.track == track && r.status == Status::scored) {
      tables.push_back(*r.score_table);
      ids.push_back(id);
    }
  }
  std::vector<LeaderboardEntry> out;
  if (tables.empty()) {
    return out;
  }
  std::set<std::string> seen;
  for (std::size_t i : rank_tables(tables)) {
    if (seen.insert(tables[i].metadata.team).second) {
      out.push_back({ids[i], idx->records.at(ids[i])->score_table});
    }
  }
  return out;
}

std::size_t ScoringService::num_records() const { return snapshot()->records.size(); }

void ScoringService::worker_loop()
{
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(queue_mu_);
      queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) {
        return;
      }
      id = queue_.front();
      queue_.pop_front();
      if (in_flight_.contains(id)) {
        continue;
      }
      in_flight_.insert(id);
      ++running_;
    }
    try {
      score(id);
    } catch (const std::exception & e) {
      std::cerr << "robobench: scoring " << id << " aborted: " << e.what() << "\n";
    }
    {
      std::lock_guard lock(queue_mu_);
      in_flight_.erase(id);
      --running_;
    }
    idle_cv_.notify_all();
  }
}

void ScoringService::score(const std::string & id)
{
  std::string payload;
  std::string received_at;
  Track track;
  {
    std::lock_guard writer(writer_mu_);
    auto it = working_.records.find(id);
    if (it == working_.records.end() || is_terminal(it->second->status)) {
      return;
    }
    track = it->second->track;
    received_at = it->second->received_at;
    payload = payloads_.at(id);
    if (it->second->status == Status::queued) {
      ojson ev;
      ev["type"] = "scoring";
      ev["id"] = id;
      commit(ev.dump());
    }
  }
  if (cfg_.debug_scoring_delay_ms > 0) {
    std::unique_lock lock(queue_mu_);
    if (queue_cv_.wait_for(
          lock, std::chrono::milliseconds(cfg_.debug_scoring_delay_ms), [&] { return stopping_; })) {
      return;  // left in "scoring"; resumed on restart
    }
  }

  ojson ev;
  ev["id"] = id;
  try {
    const auto & ts = tracks_.at(track);
    const Submission sub = parse_submission(payload, track, {ts.submission_root, &ts.manifest});
    RunConfig rc;
    rc.seed = cfg_.seed;
    EvalResult res = cmd_eval(ts.manifest, sub, rc, params_);
    // Leaderboard ties fall back to the server's receive time.
    if (res.table.metadata.timestamp.empty()) {
      res.table.metadata.timestamp = received_at;
    }
    ev["type"] = "scored";
    ev["score_table"] = res.table.to_json();
  } catch (const std::exception & e) {
    ev = ojson();
    ev["type"] = "failed";
    ev["id"] = id;
    ev["reason"] = e.what();
  }
  std::lock_guard writer(writer_mu_);
  auto it = working_.records.find(id);
  if (it == working_.records.end() || is_terminal(it->second->status)) {
    return;  // never write a second terminal event
  }
  commit(ev.dump());
}

void ScoringService::wait_idle()
{
  std::unique_lock lock(queue_mu_);
  idle_cv_.wait(lock, [&] { return (queue_.empty() && running_ == 0) || stopping_; });
}

void ScoringService::stop()
{
  {
    std::lock_guard lock(queue_mu_);
    if (stopping_ && workers_.empty()) {
      return;
    }
    stopping_ = true;
  }
  queue_cv_.notify_all();
  idle_cv_.notify_all();
  for (auto & t : workers_) {
    if (t.joinable()) {
      t.join();
    }
  }
  workers_.clear();
}

}  // namespace robobench::service
