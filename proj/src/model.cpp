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

#include "ngs/model.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::kAddK, "addk"},
    {Method::kGoodTuring, "gt"},
    {Method::kAbs, "abs"},
    {Method::kKns, "kns"},
    {Method::kMkns, "mkns"},
    {Method::kMdknspomd, "mdknspomd"},
}};

constexpr std::array<std::pair<UnigramDistribution::Variant, std::string_view>, 4>
    kVariantNames{{
        {UnigramDistribution::Variant::kUniform, "uniform"},
        {UnigramDistribution::Variant::kEmpirical, "empirical"},
        {UnigramDistribution::Variant::kContinuation, "continuation"},
        {UnigramDistribution::Variant::kWeighted, "weighted"},
    }};

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  throw InvariantError("unnamed smoothing method");
}

Method parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  throw ArgumentError(
      fmt::format("unknown method '{}' (expected addk, gt, abs, kns, mkns, mdknspomd)", name));
}

std::string_view variant_name(UnigramDistribution::Variant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  throw InvariantError("unnamed unigram variant");
}

UnigramDistribution::Variant parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  throw DataError(fmt::format("unknown unigram variant '{}'", name));
}

SmoothedModel::SmoothedModel(Method method, int order, std::shared_ptr<const Vocabulary> vocab,
                             std::vector<ModelLevel> levels, UnigramDistribution unigram,
                             std::optional<double> delta)
    : method_(method),
      order_(order),
      vocab_(std::move(vocab)),
      levels_(std::move(levels)),
      unigram_(std::move(unigram)),
      delta_(delta) {
  if (!vocab_) throw ArgumentError("model needs a vocabulary");
  if (order_ < 1 || order_ > kMaxOrder) throw ArgumentError("order must be in 1..3");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const int expected = order_ - 1 - static_cast<int>(i);
    if (levels_[i].history_length != expected) {
      throw InvariantError(fmt::format("level {} has history length {}, expected {}", i,
                                       levels_[i].history_length, expected));
    }
  }
  unigram_.probs.resize(vocab_->size(), 0.0);
}

double SmoothedModel::prob(std::span<const WordId> history, WordId word) const {
  if (history.size() != static_cast<std::size_t>(order_ - 1)) {
    throw ArgumentError(fmt::format("history of length {} for an order-{} model",
                                    history.size(), order_));
  }
  if (word >= vocab_->size() || vocab_->is_bos(word)) {
    throw ArgumentError(fmt::format("word id {} is not predictable", word));
  }
  double p = unigram_[word];
  for (auto level = levels_.rbegin(); level != levels_.rend(); ++level) {
    const NGram h(history.last(level->history_length));
    auto it = level->histories.find(h);
    if (it == level->histories.end()) continue;
    auto num = level->numerators.find(h.extended(word));
    const double head = num == level->numerators.end() ? 0.0 : num->second / it->second.total;
    p = head + it->second.gamma * p;
  }
  return p;
}

double SmoothedModel::gamma(const NGram& history) const {
  if (levels_.empty()) return 1.0;
  auto it = levels_.front().histories.find(history);
  return it == levels_.front().histories.end() ? 1.0 : it->second.gamma;
}

std::vector<NGram> SmoothedModel::observed_histories() const {
  std::vector<NGram> out;
  if (levels_.empty()) return out;
  out.reserve(levels_.front().histories.size());
  for (const auto& [h, w] : levels_.front().histories) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ngs
