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

#include "robobench/service/journal.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::service
{

namespace
{

constexpr std::size_t kMagicLen = 7;
constexpr std::size_t kFrameHeader = 8;

void put_u32(std::vector<std::uint8_t> & out, std::uint32_t v)
{
  for (int k = 0; k < 4; ++k) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
}

std::uint32_t get_u32(const std::uint8_t * p)
{
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

[[noreturn]] void sys_fail(const std::string & what, const std::filesystem::path & path)
{
  throw IoError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t * data, std::size_t n, const std::filesystem::path & path)
{
  while (n > 0) {
    const ssize_t w = ::write(fd, data, n);
    if (w < 0) {
      if (errno == EINTR) {
        continue;
      }
      sys_fail("cannot write", path);
    }
    data += w;
    n -= static_cast<std::size_t>(w);
  }
}

}  // namespace

std::uint32_t crc32(std::string_view bytes)
{
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks to stay within range.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
    crc = ::crc32(crc, reinterpret_cast<const Bytef *>(bytes.data() + off), chunk);
    off += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> encode_header(const char * magic)
{
  std::vector<std::uint8_t> out(magic, magic + kMagicLen);
  out.push_back(kJournalVersion);
  return out;
}

std::vector<std::uint8_t> encode_frame(std::string_view payload)
{
  if (payload.empty() || payload.size() > kMaxEventBytes) {
    throw ValidationError("journal event size out of range");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeader + payload.size());
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  put_u32(out, crc32(payload));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

DecodedLog decode_log(std::span<const std::uint8_t> bytes, const char * magic)
{
  if (bytes.size() < kJournalHeaderBytes || std::memcmp(bytes.data(), magic, kMagicLen) != 0) {
    throw DecodeError(std::string("missing ") + magic + " header");
  }
  if (bytes[kMagicLen] != kJournalVersion) {
    throw DecodeError("unsupported journal version " + std::to_string(bytes[kMagicLen]));
  }
  DecodedLog log;
  std::size_t pos = kJournalHeaderBytes;
  log.valid_length = pos;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kFrameHeader) {
      log.torn = true;
      break;
    }
    const std::uint32_t len = get_u32(bytes.data() + pos);
    const std::uint32_t crc = get_u32(bytes.data() + pos + 4);
    if (len == 0 || len > kMaxEventBytes || bytes.size() - pos - kFrameHeader < len) {
      log.torn = true;
      break;
    }
    std::string payload(reinterpret_cast<const char *>(bytes.data() + pos + kFrameHeader), len);
    if (crc32(payload) != crc) {
      log.torn = true;
      break;
    }
    log.events.push_back(std::move(payload));
    pos += kFrameHeader + len;
    log.valid_length = pos;
  }
  return log;
}

Journal::Journal(std::filesystem::path path) : path_(std::move(path))
{
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    sys_fail("cannot open journal", path_);
  }
  struct stat st{};
  if (::fstat(fd_, &st) != 0) {
    sys_fail("cannot stat journal", path_);
  }
  if (st.st_size == 0) {
    const auto header = encode_header();
    write_all(fd_, header.data(), header.size(), path_);
    if (::fsync(fd_) != 0) {
      sys_fail("cannot sync journal", path_);
    }
    size_ = header.size();
    return;
  }
  const auto bytes = io::read_file(path_);
  DecodedLog log = decode_log(bytes);
  recovered_ = std::move(log.events);
  torn_ = log.torn;
  if (log.torn) {
    if (::ftruncate(fd_, static_cast<off_t>(log.valid_length)) != 0 || ::fsync(fd_) != 0) {
      sys_fail("cannot truncate torn journal tail", path_);
    }
  }
  size_ = log.valid_length;
}

Journal::~Journal()
{
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

std::uint64_t Journal::append(std::string_view payload)
{
  const auto frame = encode_frame(payload);
  std::lock_guard lock(mu_);
  if (::lseek(fd_, static_cast<off_t>(size_), SEEK_SET) < 0) {
    sys_fail("cannot seek journal", path_);
  }
  write_all(fd_, frame.data(), frame.size(), path_);
  if (::fdatasync(fd_) != 0) {
    sys_fail("cannot sync journal", path_);
  }
  size_ += frame.size();
  return size_;
}

void write_snapshot(const std::filesystem::path & path, std::string_view payload)
{
  auto bytes = encode_header(kSnapshotMagic);
  const auto frame = encode_frame(payload);
  bytes.insert(bytes.end(), frame.begin(), frame.end());
  io::write_file_atomic(path, bytes);
}

std::string read_snapshot(const std::filesystem::path & path)
{
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    return {};
  }
  try {
    const auto bytes = io::read_file(path);
    DecodedLog log = decode_log(bytes, kSnapshotMagic);
    if (log.torn || log.events.size() != 1) {
      return {};
    }
    return std::move(log.events.front());
  } catch (const Error &) {
    return {};
  }
}

}  // namespace robobench::service
