// Copyright 2026 The sweepsf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWEEPSF_RNG_HPP_
#define SWEEPSF_RNG_HPP_

#include <cstdint>
#include <random>

namespace sweepsf {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20060401;

// Stream tags so that one replicate can own several independent generators
// (sweep path, genealogy, ...) derived from the same root seed.
enum class Stream : std::uint64_t {
  replicate = 0x5eed0001,
  path = 0x5eed0002,
  genealogy = 0x5eed0003,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replicate `index` under `root`, independent of thread layout.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index,
                                    Stream stream = Stream::replicate) {
  return mix64(mix64(root ^ static_cast<std::uint64_t>(stream)) + index);
}

/// Uniform double in (0, 1); never returns exactly 0 or 1.
inline double open_uniform(Rng& rng) {
  for (;;) {
    const double u = std::generate_canonical<double, 64>(rng);
    if (u > 0.0 && u < 1.0) return u;
  }
}

}  // namespace sweepsf

#endif  // SWEEPSF_RNG_HPP_
