// Copyright 2026 The milpenv Authors
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

// Portable pseudo-random numbers.
//
// CounterRng is SplitMix64 (Steele, Lea and Flood, 2014) keyed by a seed and
// a stream index: output i of stream (seed, k) is
//
//   Mix(key + (i + 1) * 0x9e3779b97f4a7c15),  key = Mix(seed ^ Mix(k)),
//
// so any (seed, k) stream can be created directly without drawing the
// earlier ones. Integer draws use Lemire's multiply-and-reject method and
// doubles take the top 53 bits; no step depends on the standard library's
// distributions, whose output differs between implementations.

#ifndef MILPENV_RNG_H_
#define MILPENV_RNG_H_

#include <cstdint>

namespace milpenv {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(Mix(seed ^ Mix(stream))) {}

  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix(state_);
  }

  // Uniform on [0, n); n must be positive.
  std::uint64_t Below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(Next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform on the closed range [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(Next());
    return lo + static_cast<std::int64_t>(Below(span));
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Sum of n Bernoulli(p) draws.
  int Binomial(int n, double p) {
    int k = 0;
    for (int i = 0; i < n; ++i) k += Bernoulli(p) ? 1 : 0;
    return k;
  }

 private:
  std::uint64_t state_;
};

}  // namespace milpenv

#endif  // MILPENV_RNG_H_
