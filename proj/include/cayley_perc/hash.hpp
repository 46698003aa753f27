// Copyright 2026 The cayley-perc Authors.
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
#include <span>

namespace cperc {

// SplitMix64 finalizer (Steele, Lea & Flood). Fixed constants; the output is
// identical on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Two-input mix: splitmix64(a ^ splitmix64(b)). Used both for per-vertex
// selection draws (a = seed, b = rank) and for deriving trial seeds.
constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return mix(mix(a, b), c); }

// Key for tuples too long to rank in 64 bits.
inline std::uint64_t hash_tuple(std::span<const std::uint8_t> xs) {
  std::uint64_t h = splitmix64(xs.size());
  for (std::uint8_t x : xs) h = mix(h, x);
  return h;
}

}  // namespace cperc
