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

#include <cstddef>
#include <cstdint>
#include <future>
#include <list>
#include <mutex>
#include <unordered_map>

#include "mosaic/backend.hpp"
#include "mosaic/image.hpp"

namespace mosaic {

inline constexpr std::size_t kDefaultCacheCapacity = 8;

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
  std::size_t capacity = 0;

  friend bool operator==(const CacheStats&, const CacheStats&) = default;
};

/// Content-addressed LRU cache of image encodings, keyed by pixel_key().
///
/// A miss invokes the encoder once; concurrent misses on the same key
/// wait on that single in-flight encode and count as hits. Encoder
/// failures propagate to every waiter and leave the key uncached.
///
/// Encodings are backend-specific: use one cache per backend instance.
class EncodingCache {
 public:
  explicit EncodingCache(std::size_t capacity = kDefaultCacheCapacity);

  ImageEncoding get_or_encode(const ImageRGB& img, const ModelBackend& backend);

  /// Drops the entry for these pixels (e.g. after the backend reported the
  /// encoding as stale). Returns whether an entry was removed.
  bool invalidate(const ImageRGB& img);

  CacheStats stats() const;
  void reset_stats();
  std::size_t size() const;
  void clear();

 private:
  struct Entry {
    std::uint64_t key;
    ImageEncoding encoding;
  };

  void insert_locked(std::uint64_t key, ImageEncoding enc);

  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Entry> lru_;  // front = most recently used
  std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
  std::unordered_map<std::uint64_t, std::shared_future<ImageEncoding>>
      in_flight_;
  CacheStats stats_;
};

}  // namespace mosaic
