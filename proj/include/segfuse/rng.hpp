/*
 * Copyright 2025 The segfuse authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string_view>

namespace segfuse {

/// SplitMix64 finalizer. Reference: Steele, Lea, Flood (2014),
/// "Fast splittable pseudorandom number generators".
constexpr std::uint64_t splitmix64_hash(std::uint64_t key, std::uint64_t data) noexcept {
  std::uint64_t z = key ^ data;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over raw bytes; the stable string hash used for stream keys.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic pseudo-random stream (SplitMix64). One `next_u64()` call is
/// one draw; every higher-level sampler below consumes exactly one draw, so
/// draw counts are part of the reproducibility contract.
class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 significant bits.
  double uniform_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0,n), n >= 1. Multiply-shift range reduction keeps the
  /// draw count at exactly one regardless of n.
  std::uint64_t uniform_index(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Stream derivation: identical (master_seed, item_key) pairs always yield
/// identical streams, independent of scheduling order. Keys are free-form
/// text; corpus drivers use "scene_id/frame_id" or the file stem.
inline RandomStream derive_stream(std::uint64_t master_seed, std::string_view item_key) {
  return RandomStream(splitmix64_hash(master_seed, fnv1a64(item_key)));
}

}  // namespace segfuse
