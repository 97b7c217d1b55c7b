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

#ifndef DPIMPUTE_RANDOM_H_
#define DPIMPUTE_RANDOM_H_

#include <cstdint>
#include <random>

namespace dpimpute {

// SplitMix64 finalizer over (seed, stream). Used to derive independent
// sub-seeds, e.g. one per Monte Carlo run or per imputed record.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

// Seeded source of randomness with a platform-independent draw sequence.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. All transforms on top of it are implemented here rather than
// with <random> distributions, whose algorithms vary between standard
// libraries:
//   Uniform()        (k >> 11) * 2^-53, in [0, 1)
//   UniformOpen()    ((k >> 11) + 0.5) * 2^-53, in (0, 1)
//   StandardNormal() Box-Muller on two UniformOpen() draws, cosine branch
//
// Move-only: a source has a single owner. Parallel work uses ForStream.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : seed_(seed), engine_(seed) {}

  static RandomSource ForStream(uint64_t seed, uint64_t stream) {
    return RandomSource(MixSeed(seed, stream));
  }

  RandomSource(RandomSource&&) = default;
  RandomSource& operator=(RandomSource&&) = default;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }
  double Uniform();
  double UniformOpen();
  double StandardNormal();

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dpimpute

#endif  // DPIMPUTE_RANDOM_H_
