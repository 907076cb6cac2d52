// Copyright 2026 The Mosaic Authors
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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace mosaic {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// Incremental FNV-1a 64-bit hasher.
class Fnv1a64 {
 public:
  Fnv1a64& update(std::span<const std::uint8_t> bytes) noexcept;
  Fnv1a64& update(std::string_view text) noexcept;
  /// Appends `value` as 4 little-endian bytes.
  Fnv1a64& update_u32le(std::uint32_t value) noexcept;
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = kFnvOffsetBasis;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// Lower-case, zero-padded 16 digit hex.
std::string to_hex64(std::uint64_t value);

/// splitmix64 stream. The state advances by the golden-ratio increment
/// before each output is mixed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace mosaic
