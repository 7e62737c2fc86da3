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

// Text ingestion: normalization, vocabulary, sentence padding, and folds.

#ifndef NGS_CORPUS_HPP_
#define NGS_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ngs/ngram.hpp"

namespace ngs {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// Name of the k-th beginning-of-sentence sentinel: "<s>", "<s2>", "<s3>", ...
std::string bos_token(int k);

// Number of BOS sentinels a vocabulary for an order-n model reserves.
inline int bos_count_for_order(int order) { return order > 2 ? order - 1 : 1; }

using TokenSentence = std::vector<std::string>;

// Sentences as normalized token strings, before a vocabulary is applied.
struct TokenCorpus {
  std::vector<TokenSentence> sentences;

  std::size_t token_total() const;
};

using Sentence = std::vector<WordId>;

// Sentences as id sequences, unpadded.
struct SentenceCorpus {
  std::vector<Sentence> sentences;
  std::size_t token_total = 0;
};

// Token <-> id mapping. Ids 0..bos_count-1 are the BOS sentinels (outermost
// last: "<s>" is id 0), followed by "</s>" and "<unk>", then regular tokens by
// descending frequency with lexicographic tie-breaking.
class Vocabulary {
 public:
  // Keeps tokens with frequency >= min_count. Reserves the BOS sentinels an
  // order-n model needs.
  static Vocabulary build(const TokenCorpus& corpus, int min_count, int order);

  // Regular tokens in the given id order (sentinels are prepended). Used when
  // ids are dictated by a file rather than by frequency.
  static Vocabulary from_regular_tokens(std::span<const std::string> tokens,
                                        int bos_count, int min_count = 1);

  // Parses the vocabulary file format: one token per line, line number = id,
  // sentinels first in fixed order.
  static Vocabulary read(std::istream& in);
  void write(std::ostream& out) const;

  std::size_t size() const { return tokens_.size(); }
  int bos_count() const { return bos_count_; }
  int min_count() const { return min_count_; }

  WordId bos(int k = 1) const;
  WordId eos() const { return static_cast<WordId>(bos_count_); }
  WordId unk() const { return static_cast<WordId>(bos_count_ + 1); }
  bool is_bos(WordId id) const { return id < static_cast<WordId>(bos_count_); }
  bool is_sentinel(WordId id) const { return id <= unk(); }

  // Id of a token, mapping unknown tokens to UNK. Sentinel spellings other
  // than "<unk>" are never produced by raw text and also map to UNK.
  WordId lookup_text(std::string_view token) const;
  std::optional<WordId> find(std::string_view token) const;
  const std::string& token(WordId id) const;

  // Ids a model may predict: everything except the BOS sentinels.
  std::vector<WordId> predictable() const;
  std::size_t predictable_size() const { return tokens_.size() - bos_count_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.bos_count_ == b.bos_count_;
  }

 private:
  Vocabulary(std::vector<std::string> tokens, int bos_count, int min_count);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, WordId> ids_;
  int bos_count_ = 1;
  int min_count_ = 1;
};

// Reads one sentence per line; lowercases and splits on whitespace; drops
// empty lines. Throws IngestionError on invalid UTF-8.
TokenCorpus tokenize_and_normalize(std::istream& in);
TokenCorpus tokenize_and_normalize(std::string_view text);

// Replaces out-of-vocabulary tokens by UNK.
SentenceCorpus apply_vocabulary(const TokenCorpus& corpus, const Vocabulary& vocab);

// Prepends order-1 BOS sentinels (outermost first, so "<s>" immediately
// precedes the first word) and appends EOS.
Sentence pad_sentence(std::span<const WordId> sentence, int order, const Vocabulary& vocab);

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of;

  std::vector<std::size_t> members(int fold) const;
  std::size_t size(int fold) const;
};

// Contiguous blocks: fold f receives the f-th block, with the remainder
// spread over the first folds. With shuffle, a seeded permutation of the
// sentence indices precedes blocking.
FoldAssignment split_folds(std::size_t sentence_count, int k, std::uint64_t seed,
                           bool shuffle = false);

}  // namespace ngs

#endif  // NGS_CORPUS_HPP_
