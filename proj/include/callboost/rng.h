// Copyright 2026 The callboost Authors.
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
//
// Seeded random streams. Values are derived from std::mt19937_64 by hand
// instead of through <random> distributions, whose output differs between
// standard libraries.

#ifndef CALLBOOST_RNG_H_
#define CALLBOOST_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace callboost {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for (seed, item, purpose).
inline uint64_t StreamSeed(uint64_t seed, uint64_t item, uint64_t purpose) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ item) ^ (purpose * 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t Next() { return gen_(); }
  // [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  bool Bernoulli(double p) { return Uniform01() < p; }

  // Uniform on [0, n); n must be positive.
  size_t UniformInt(size_t n) {
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<size_t>(x % bound);
  }

  // Uniform on [lo, hi].
  long long UniformRange(long long lo, long long hi) {
    return lo + static_cast<long long>(UniformInt(static_cast<size_t>(hi - lo + 1)));
  }

  template <typename T>
  void Shuffle(std::vector<T> &v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[UniformInt(i)]);
    }
  }

  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[UniformInt(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace callboost

#endif  // CALLBOOST_RNG_H_
