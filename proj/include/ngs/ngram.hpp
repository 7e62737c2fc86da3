// Copyright 2026 The ngs Authors
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

#ifndef NGS_NGRAM_HPP_
#define NGS_NGRAM_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>

#include "ngs/error.hpp"

namespace ngs {

using WordId = std::uint32_t;
using Count = std::uint64_t;

inline constexpr int kMaxOrder = 3;

// Fixed-capacity id sequence used as a key for n-grams and their histories.
// Ordering is lexicographic over ids for sequences of equal length.
class NGram {
 public:
  NGram() = default;
  NGram(std::initializer_list<WordId> ids) : NGram(std::span(ids.begin(), ids.size())) {}
  explicit NGram(std::span<const WordId> ids) {
    if (ids.size() > static_cast<std::size_t>(kMaxOrder)) {
      throw ArgumentError("n-gram longer than the supported maximum order");
    }
    for (std::size_t i = 0; i < ids.size(); ++i) ids_[i] = ids[i];
    size_ = static_cast<std::uint8_t>(ids.size());
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  WordId operator[](std::size_t i) const { return ids_[i]; }
  WordId front() const { return ids_[0]; }
  WordId back() const { return ids_[size_ - 1]; }
  std::span<const WordId> ids() const { return {ids_.data(), size_}; }

  // All but the last id: the conditioning history of an n-gram.
  NGram history() const { return NGram(ids().first(size_ - 1)); }
  // All but the first id: the next-lower-order n-gram.
  NGram drop_front() const { return NGram(ids().subspan(1)); }
  NGram extended(WordId w) const {
    NGram out = *this;
    if (out.size_ >= kMaxOrder) throw ArgumentError("n-gram overflow");
    out.ids_[out.size_++] = w;
    return out;
  }

  friend bool operator==(const NGram&, const NGram&) = default;
  friend std::strong_ordering operator<=>(const NGram& a, const NGram& b) {
    for (std::size_t i = 0; i < a.size_ && i < b.size_; ++i) {
      if (auto c = a.ids_[i] <=> b.ids_[i]; c != 0) return c;
    }
    return a.size_ <=> b.size_;
  }

 private:
  std::array<WordId, kMaxOrder> ids_{};
  std::uint8_t size_ = 0;
};

struct NGramHash {
  std::size_t operator()(const NGram& g) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ g.size();
    for (WordId id : g.ids()) {
      h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace ngs

#endif  // NGS_NGRAM_HPP_
