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

#include "robobench/rng.hpp"

#include <cmath>
#include <numbers>

namespace robobench
{

std::uint64_t fmix64(std::uint64_t x)
{
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

CounterRng::CounterRng(DerivedSeed seed, std::uint64_t stream) : CounterRng(seed.value, stream) {}

CounterRng::CounterRng(std::uint64_t key, std::uint64_t stream)
: key_(key), stream_mix_(fmix64(stream + 0xD1B54A32D192ED03ULL))
{
}

std::uint64_t CounterRng::next_u64()
{
  ++counter_;
  return fmix64((key_ + 0x9E3779B97F4A7C15ULL * counter_) ^ stream_mix_);
}

double CounterRng::uniform()
{
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t CounterRng::below(std::uint64_t n)
{
  // Largest multiple of n representable; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double CounterRng::normal()
{
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::poisson(double lambda)
{
  if (!(lambda > 0.0)) {
    return 0;
  }
  if (lambda < 64.0) {
    const double limit = std::exp(-lambda);
    double p = 1.0;
    std::uint64_t k = 0;
    while (true) {
      p *= uniform();
      if (p <= limit) {
        return k;
      }
      ++k;
    }
  }
  const double v = std::floor(lambda + std::sqrt(lambda) * normal() + 0.5);
  return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
}

bool CounterRng::bernoulli(double p) { return uniform() < p; }

}  // namespace robobench
