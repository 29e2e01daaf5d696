// Copyright 2026 The mobcache Authors
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

#ifndef MOBCACHE_RNG_H_
#define MOBCACHE_RNG_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>

namespace mobcache {

// All randomness in the library flows through std::mt19937_64 engines. Work
// that is split into independent streams seeds stream `s` of a run with
// seed `seed` by StreamSeed(seed, s), so results do not depend on how
// streams are scheduled across threads.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
inline std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  return Mix64(Mix64(seed) ^ Mix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
inline double UnitUniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], portable across standard libraries.
inline std::int64_t UniformInt(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(UnitUniform(rng) *
                                        static_cast<double>(span));
}

// Index i with cdf[i-1] <= u < cdf[i]; `cdf` is an inclusive prefix sum whose
// last entry is ~1. Zero-mass entries are never returned.
inline std::size_t SampleFromCdf(std::span<const double> cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) {
    // u landed in the rounding gap above cdf.back(); take the last index
    // with positive mass.
    std::size_t i = cdf.size() - 1;
    while (i > 0 && cdf[i] == cdf[i - 1]) --i;
    return i;
  }
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace mobcache

#endif  // MOBCACHE_RNG_H_
