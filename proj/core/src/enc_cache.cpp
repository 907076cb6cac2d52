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

#include "mosaic/enc_cache.hpp"

#include "mosaic/error.hpp"

namespace mosaic {

EncodingCache::EncodingCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) {
    throw Error(ErrorKind::kConfigError, "cache capacity must be >= 1");
  }
  stats_.capacity = capacity_;
}

ImageEncoding EncodingCache::get_or_encode(const ImageRGB& img,
                                           const ModelBackend& backend) {
  validate(img);
  const std::uint64_t key = pixel_key(img);

  std::promise<ImageEncoding> promise;
  {
    std::unique_lock lock(mu_);
    if (auto it = index_.find(key); it != index_.end()) {
      ++stats_.hits;
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->encoding;
    }
    if (auto it = in_flight_.find(key); it != in_flight_.end()) {
      ++stats_.hits;
      std::shared_future<ImageEncoding> pending = it->second;
      lock.unlock();
      return pending.get();
    }
    ++stats_.misses;
    in_flight_.emplace(key, promise.get_future().share());
  }

  try {
    ImageEncoding enc = backend.encode_image(img);
    {
      std::lock_guard lock(mu_);
      insert_locked(key, enc);
      in_flight_.erase(key);
    }
    promise.set_value(enc);
    return enc;
  } catch (...) {
    {
      std::lock_guard lock(mu_);
      in_flight_.erase(key);
    }
    promise.set_exception(std::current_exception());
    throw;
  }
}

void EncodingCache::insert_locked(std::uint64_t key, ImageEncoding enc) {
  if (auto it = index_.find(key); it != index_.end()) {
    it->second->encoding = std::move(enc);
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  lru_.push_front({key, std::move(enc)});
  index_[key] = lru_.begin();
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().key);
    lru_.pop_back();
    ++stats_.evictions;
  }
}

bool EncodingCache::invalidate(const ImageRGB& img) {
  const std::uint64_t key = pixel_key(img);
  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return false;
  lru_.erase(it->second);
  index_.erase(it);
  return true;
}

CacheStats EncodingCache::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void EncodingCache::reset_stats() {
  std::lock_guard lock(mu_);
  stats_ = CacheStats{};
  stats_.capacity = capacity_;
}

std::size_t EncodingCache::size() const {
  std::lock_guard lock(mu_);
  return lru_.size();
}

void EncodingCache::clear() {
  std::lock_guard lock(mu_);
  lru_.clear();
  index_.clear();
}

}  // namespace mosaic
