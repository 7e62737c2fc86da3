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

#include "ngs/corpus.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "ngs/error.hpp"
#include "unicode.hpp"

namespace ngs {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

bool is_sentinel_spelling(std::string_view tok) {
  if (tok == kEos || tok == kUnk || tok == kBos) return true;
  if (tok.size() < 4 || tok.substr(0, 2) != "<s" || tok.back() != '>') return false;
  const auto digits = tok.substr(2, tok.size() - 3);
  return std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string bos_token(int k) {
  if (k < 1) throw ArgumentError("BOS index must be >= 1");
  return k == 1 ? std::string(kBos) : fmt::format("<s{}>", k);
}

std::size_t TokenCorpus::token_total() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, int bos_count, int min_count)
    : tokens_(std::move(tokens)), bos_count_(bos_count), min_count_(min_count) {
  ids_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], static_cast<WordId>(i)).second) {
      throw DataError(fmt::format("duplicate vocabulary token '{}'", tokens_[i]));
    }
  }
}

Vocabulary Vocabulary::build(const TokenCorpus& corpus, int min_count, int order) {
  if (min_count < 1) throw ArgumentError("min_count must be >= 1");
  if (order < 1 || order > kMaxOrder) throw ArgumentError("order must be in 1..3");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& tok : sentence) {
      if (!is_sentinel_spelling(tok)) ++freq[tok];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : freq) {
    if (n >= static_cast<std::size_t>(min_count)) kept.emplace_back(tok, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> regular;
  regular.reserve(kept.size());
  for (auto& [tok, n] : kept) regular.push_back(std::move(tok));
  return from_regular_tokens(regular, bos_count_for_order(order), min_count);
}

Vocabulary Vocabulary::from_regular_tokens(std::span<const std::string> tokens,
                                           int bos_count, int min_count) {
  if (bos_count < 1) throw ArgumentError("bos_count must be >= 1");
  std::vector<std::string> all;
  all.reserve(tokens.size() + bos_count + 2);
  for (int k = 1; k <= bos_count; ++k) all.push_back(bos_token(k));
  all.emplace_back(kEos);
  all.emplace_back(kUnk);
  for (const auto& tok : tokens) {
    if (is_sentinel_spelling(tok)) {
      throw DataError(fmt::format("reserved token '{}' listed as a regular token", tok));
    }
    all.push_back(tok);
  }
  return Vocabulary(std::move(all), bos_count, min_count);
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  int bos_count = 0;
  while (static_cast<std::size_t>(bos_count) < lines.size() &&
         lines[bos_count] == bos_token(bos_count + 1)) {
    ++bos_count;
  }
  if (bos_count == 0 || lines.size() < static_cast<std::size_t>(bos_count) + 2 ||
      lines[bos_count] != kEos || lines[bos_count + 1] != kUnk) {
    throw DataError("vocabulary file must start with <s>[, <s2>...], </s>, <unk>");
  }
  return from_regular_tokens(std::span(lines).subspan(bos_count + 2), bos_count);
}

void Vocabulary::write(std::ostream& out) const {
  for (const auto& tok : tokens_) out << tok << '\n';
}

WordId Vocabulary::bos(int k) const {
  if (k < 1 || k > bos_count_) {
    throw ArgumentError(fmt::format("vocabulary has no BOS sentinel {}", bos_token(k)));
  }
  return static_cast<WordId>(k - 1);
}

WordId Vocabulary::lookup_text(std::string_view token) const {
  if (token == kUnk || is_sentinel_spelling(token)) return unk();
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? unk() : it->second;
}

std::optional<WordId> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(WordId id) const {
  if (id >= tokens_.size()) throw ArgumentError(fmt::format("word id {} out of range", id));
  return tokens_[id];
}

std::vector<WordId> Vocabulary::predictable() const {
  std::vector<WordId> out(tokens_.size() - bos_count_);
  std::iota(out.begin(), out.end(), static_cast<WordId>(bos_count_));
  return out;
}

TokenCorpus tokenize_and_normalize(std::istream& in) {
  TokenCorpus corpus;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    const std::string lowered = internal::lowercase_utf8(line, line_start);
    TokenSentence sentence;
    std::size_t i = 0;
    while (i < lowered.size()) {
      while (i < lowered.size() && is_space(lowered[i])) ++i;
      std::size_t j = i;
      while (j < lowered.size() && !is_space(lowered[j])) ++j;
      if (j > i) sentence.emplace_back(lowered.substr(i, j - i));
      i = j;
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

TokenCorpus tokenize_and_normalize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return tokenize_and_normalize(in);
}

SentenceCorpus apply_vocabulary(const TokenCorpus& corpus, const Vocabulary& vocab) {
  SentenceCorpus out;
  out.sentences.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    Sentence ids;
    ids.reserve(sentence.size());
    for (const auto& tok : sentence) ids.push_back(vocab.lookup_text(tok));
    out.token_total += ids.size();
    out.sentences.push_back(std::move(ids));
  }
  return out;
}

Sentence pad_sentence(std::span<const WordId> sentence, int order, const Vocabulary& vocab) {
  if (order < 1) throw ArgumentError("order must be >= 1");
  if (order - 1 > vocab.bos_count()) {
    throw ArgumentError(fmt::format("vocabulary reserves {} BOS sentinels; order {} needs {}",
                                    vocab.bos_count(), order, order - 1));
  }
  Sentence out;
  out.reserve(sentence.size() + order);
  for (int k = order - 1; k >= 1; --k) out.push_back(vocab.bos(k));
  out.insert(out.end(), sentence.begin(), sentence.end());
  out.push_back(vocab.eos());
  return out;
}

std::vector<std::size_t> FoldAssignment::members(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::size_t FoldAssignment::size(int fold) const {
  return static_cast<std::size_t>(std::count(fold_of.begin(), fold_of.end(), fold));
}

FoldAssignment split_folds(std::size_t sentence_count, int k, std::uint64_t seed,
                           bool shuffle) {
  if (k < 2) throw ArgumentError("fold count must be >= 2");
  if (static_cast<std::size_t>(k) > sentence_count) {
    throw ArgumentError(
        fmt::format("fold count {} exceeds sentence count {}", k, sentence_count));
  }
  std::vector<std::size_t> order(sentence_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    std::mt19937_64 rng(seed);
    // Explicit Fisher-Yates; std::shuffle's draw sequence is library-specific.
    for (std::size_t i = sentence_count; i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
  }
  FoldAssignment folds;
  folds.k = k;
  folds.fold_of.assign(sentence_count, 0);
  const std::size_t base = sentence_count / k;
  const std::size_t extra = sentence_count % k;
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t len = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t i = 0; i < len; ++i) folds.fold_of[order[pos++]] = f;
  }
  return folds;
}

}  // namespace ngs
