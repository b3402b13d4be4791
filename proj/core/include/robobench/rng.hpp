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

#include "robobench/core.hpp"

namespace robobench
{

/// Counter-based generator: the n-th draw of stream `s` under key `k` is
///   fmix64(k + 0x9E3779B97F4A7C15 * (n + 1) ^ fmix64(s + 0xD1B54A32D192ED03))
/// where fmix64 is the MurmurHash3 64-bit finalizer. No hidden state beyond
/// the counter, so a draw sequence is reproducible on any platform.
class CounterRng
{
public:
  explicit CounterRng(DerivedSeed seed, std::uint64_t stream = 0);
  CounterRng(std::uint64_t key, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n) by rejection (unbiased). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller (cosine branch, two uniforms per draw).
  double normal();

  /// Poisson(lambda). Knuth's product method for lambda < 64, rounded normal
  /// approximation above.
  std::uint64_t poisson(double lambda);

  bool bernoulli(double p);

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t stream_mix_;
  std::uint64_t counter_ = 0;
};

std::uint64_t fmix64(std::uint64_t x);

}  // namespace robobench
