// Copyright 2026 The dpimpute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpimpute/random.h"

#include <cmath>
#include <numbers>

namespace dpimpute {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

uint64_t SplitMix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream ^ 0x6a09e667f3bcc909ULL));
}

double RandomSource::Uniform() {
  return static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
}

double RandomSource::UniformOpen() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

double RandomSource::StandardNormal() {
  const double u1 = UniformOpen();
  const double u2 = UniformOpen();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dpimpute
