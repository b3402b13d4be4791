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

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace robobench::service
{

// Journal file layout:
//
//   offset 0   7 bytes  magic "RBJRNL1"
//   offset 7   1 byte   format version (1)
//   then events, each:
//     u32 LE  payload length (1 .. kMaxEventBytes)
//     u32 LE  CRC-32 (zlib polynomial) of the payload
//     payload UTF-8 JSON object
//
// A crash can leave a partial last event; readers stop at the first frame
// that is short or fails its checksum, and the writer truncates it away.
//
// The snapshot file uses the same framing under magic "RBSNAP1" and holds a
// single event.

inline constexpr char kJournalMagic[] = "RBJRNL1";
inline constexpr char kSnapshotMagic[] = "RBSNAP1";
inline constexpr std::uint8_t kJournalVersion = 1;
inline constexpr std::size_t kJournalHeaderBytes = 8;
inline constexpr std::uint32_t kMaxEventBytes = 64u << 20;

struct DecodedLog
{
  std::vector<std::string> events;  // payloads in order
  std::size_t valid_length = 0;  // bytes up to the end of the last good event
  bool torn = false;  // bytes after valid_length were discarded
};

/// Parses a journal image. Throws DecodeError if the header is wrong; a bad
/// frame ends the log (torn = true) instead of throwing.
DecodedLog decode_log(std::span<const std::uint8_t> bytes, const char * magic = kJournalMagic);

std::vector<std::uint8_t> encode_header(const char * magic = kJournalMagic);
std::vector<std::uint8_t> encode_frame(std::string_view payload);

std::uint32_t crc32(std::string_view bytes);

/// Append-only, fsync-per-event journal. Not copyable.
class Journal
{
public:
  /// Opens or creates the journal, truncating a torn tail. The surviving
  /// events are available from recovered().
  explicit Journal(std::filesystem::path path);
  ~Journal();
  Journal(const Journal &) = delete;
  Journal & operator=(const Journal &) = delete;

  const std::vector<std::string> & recovered() const { return recovered_; }
  bool recovered_torn_tail() const { return torn_; }

  /// Durably appends one event; returns the file size after the append.
  std::uint64_t append(std::string_view payload);
  std::uint64_t size() const { return size_; }
  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t size_ = 0;
  std::vector<std::string> recovered_;
  bool torn_ = false;
  std::mutex mu_;
};

/// Atomically replaces the snapshot file with a single framed payload.
void write_snapshot(const std::filesystem::path & path, std::string_view payload);
/// The snapshot payload, or empty if the file is missing or invalid.
std::string read_snapshot(const std::filesystem::path & path);

}  // namespace robobench::service
