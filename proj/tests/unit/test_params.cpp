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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <regex>

#include "fixtures.hpp"
#include "robobench/params.hpp"

using namespace robobench;

namespace
{

std::string replace_line(std::string text, const std::string & prefix, const std::string & with)
{
  const auto pos = text.find("\n" + prefix);
  EXPECT_NE(pos, std::string::npos) << prefix;
  const auto end = text.find('\n', pos + 1);
  return text.replace(pos + 1, end - pos - 1, with);
}

class EnvGuard
{
public:
  explicit EnvGuard(const char * name) : name_(name)
  {
    if (const char * v = std::getenv(name)) {
      old_ = v;
    }
  }
  ~EnvGuard()
  {
    if (old_) {
      setenv(name_, old_->c_str(), 1);
    } else {
      unsetenv(name_);
    }
  }

private:
  const char * name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST(Params, CanonicalHashIsPinned)
{
  EXPECT_EQ(fnv1a64(ParamsTable::canonical_text()), ParamsTable::canonical_hash());
  EXPECT_EQ(ParamsTable::canonical().hash(), ParamsTable::canonical_hash());
}

TEST(Params, CanonicalTableIsCompleteAndMonotone)
{
  const auto & t = ParamsTable::canonical();
  for (CorruptionType c : all_corruption_types()) {
    if (c == CorruptionType::clean) {
      continue;
    }
    const auto [key, increasing] = control_key(c);
    for (int s = 2; s <= 5; ++s) {
      const double a = t.get(c, Severity(s - 1), key);
      const double b = t.get(c, Severity(s), key);
      if (increasing) {
        EXPECT_LE(a, b) << format_corruption(c);
      } else {
        EXPECT_GE(a, b) << format_corruption(c);
      }
    }
  }
}

TEST(Params, ParseErrorsNameTheLine)
{
  const std::string base(ParamsTable::canonical_text());
  const auto expect_error = [](const std::string & text, const std::string & needle) {
    try {
      ParamsTable::parse(text, "t.txt");
      ADD_FAILURE() << "no error for " << needle;
    } catch (const ValidationError & e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error(replace_line(base, "pixelate 3 ", "pixelate 3 factor=9"), "not monotone");
  expect_error(replace_line(base, "pixelate 3 ", "pixelate 3 factr=4"), "requires key 'factor'");
  expect_error(replace_line(base, "pixelate 3 ", "pixelate 3 factor=4 extra=1"), "unknown key 'extra'");
  expect_error(replace_line(base, "pixelate 3 ", "pixelate 3 factor=four"), "bad number");
  expect_error(replace_line(base, "pixelate 3 ", "# removed"), "missing pixelate severity 3");
  expect_error(base + "pixelate 3 factor=4\n", "duplicate record");
  expect_error(base + "warp 1 x=1\n", "warp");
  expect_error(base + "pixelate 7 factor=4\n", "severity 1..5");
  expect_error(base + "clean 1 x=1\n", "clean");
}

TEST(Params, HashFollowsBytes)
{
  const std::string text = std::string(ParamsTable::canonical_text()) + "# trailing comment\n";
  const auto t = ParamsTable::parse(text, "edited");
  EXPECT_NE(t.hash(), ParamsTable::canonical_hash());
  EXPECT_EQ(t.hash(), fnv1a64(text));
  EXPECT_EQ(t.source(), "edited");
}

TEST(Params, ResolutionOrder)
{
  EnvGuard guard("ROBOBENCH_PARAMS");
  fixtures::TempDir dir;
  const auto env_path = dir.path() / "env.txt";
  const auto cli_path = dir.path() / "cli.txt";
  {
    std::ofstream(env_path) << ParamsTable::canonical_text() << "# env\n";
    std::ofstream(cli_path) << ParamsTable::canonical_text() << "# cli\n";
  }
  unsetenv("ROBOBENCH_PARAMS");
  EXPECT_EQ(resolve_params(std::nullopt).hash(), ParamsTable::canonical_hash());
  setenv("ROBOBENCH_PARAMS", env_path.c_str(), 1);
  EXPECT_EQ(resolve_params(std::nullopt).source(), env_path.string());
  EXPECT_EQ(resolve_params(cli_path).source(), cli_path.string());
  setenv("ROBOBENCH_PARAMS", (dir.path() / "missing.txt").c_str(), 1);
  EXPECT_THROW(resolve_params(std::nullopt), IoError);
}
