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

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

[[noreturn]] void io_fail(const std::string & what, const fs::path & path)
{
  throw IoError(what + " " + path.string() + ": " + std::strerror(errno));
}

}  // namespace

Bytes read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    io_fail("cannot open", path);
  }
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    io_fail("cannot read", path);
  }
  return bytes;
}

std::string read_text_file(const fs::path & path)
{
  const Bytes b = read_file(path);
  return {b.begin(), b.end()};
}

void write_file_atomic(const fs::path & path, std::span<const std::uint8_t> bytes)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) {
    io_fail("cannot create", tmp);
  }
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0) {
      if (errno == EINTR) {
        continue;
      }
      ::close(fd);
      io_fail("cannot write", tmp);
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    io_fail("cannot sync", tmp);
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    io_fail("cannot rename into", path);
  }
}

void write_file_atomic(const fs::path & path, std::string_view text)
{
  write_file_atomic(
    path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

}  // namespace robobench::io
