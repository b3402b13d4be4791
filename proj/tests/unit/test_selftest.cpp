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

#include <string>

#include "robobench/selftest.hpp"

using namespace robobench;

TEST(Selftest, PristineBuildPasses)
{
  const auto report = run_selftest({.params = &ParamsTable::canonical()});
  for (const auto & c : report.checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  }
  EXPECT_TRUE(report.passed());
  EXPECT_GT(report.checks.size(), 25u);
}

TEST(Selftest, TamperedParamsTableFailsAndIsNamed)
{
  std::string text(ParamsTable::canonical_text());
  const auto at = text.find("fog 1 ");
  ASSERT_NE(at, std::string::npos);
  text.insert(at, "# edited\n");
  const auto tampered = ParamsTable::parse(text, "tampered.txt");
  const auto report = run_selftest({.params = &tampered});
  EXPECT_FALSE(report.passed());
  ASSERT_FALSE(report.checks.empty());
  EXPECT_EQ(report.checks[0].name, "params.hash");
  EXPECT_FALSE(report.checks[0].passed);
  EXPECT_NE(report.checks[0].detail.find("tampered.txt"), std::string::npos);
}

TEST(Selftest, MissingVectorsFail)
{
  EXPECT_FALSE(run_selftest({.params = nullptr, .vectors = {}}).passed());
}

TEST(Selftest, WrongExpectationOrThrowingVectorFails)
{
  auto vectors = embedded_golden_vectors();
  vectors.push_back({"wrong", "1", [] { return std::string("2"); }});
  vectors.push_back({"throws", "1", []() -> std::string { throw ValidationError("boom"); }});
  const auto report = run_selftest({.params = nullptr, .vectors = vectors});
  EXPECT_FALSE(report.passed());
  const auto & last = report.checks.back();
  EXPECT_FALSE(last.passed);
  EXPECT_NE(last.detail.find("boom"), std::string::npos);
}
