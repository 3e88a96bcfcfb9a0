// Copyright 2026 The bibperf Authors.
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

#ifndef BIBPERF_KEYED_RANDOM_H_
#define BIBPERF_KEYED_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace bibperf {

// All randomness is keyed by (seed, entity key), so results never depend on
// iteration order or thread count.

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t KeyedHash(uint64_t seed, std::string_view key) {
  return SplitMix64(SplitMix64(seed) ^ Fnv1a64(key));
}

inline std::mt19937_64 KeyedEngine(uint64_t seed, std::string_view key) {
  return std::mt19937_64(KeyedHash(seed, key));
}

// Uniform index in [0, n) drawn from the keyed hash. n must be positive.
inline size_t KeyedIndex(uint64_t seed, std::string_view key, size_t n) {
  return static_cast<size_t>(KeyedHash(seed, key) % n);
}

}  // namespace bibperf

#endif  // BIBPERF_KEYED_RANDOM_H_
