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

// Per-word cross-entropy (bits) and perplexity, sentence by sentence, plus
// k-fold cross-validation.

#ifndef NGS_EVALUATION_HPP_
#define NGS_EVALUATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ngs/corpus.hpp"
#include "ngs/model.hpp"
#include "ngs/smoothing.hpp"

namespace ngs {

struct SentenceScore {
  double log2prob = 0.0;
  std::size_t predicted = 0;
};

// Scores every position of a padded sentence whose target is not BOS. Throws
// EvaluationError, naming the n-gram, on a zero probability.
SentenceScore sentence_logprob(const SmoothedModel& model, std::span<const WordId> padded);

struct FoldResult {
  int fold = 0;
  std::size_t train_sentences = 0;
  std::size_t test_sentences = 0;
  std::size_t vocab_size = 0;
  std::size_t token_count = 0;
  double total_log2prob = 0.0;
  double entropy = 0.0;
  double perplexity = 0.0;
};

struct EvalReport {
  // Predicted tokens: words and EOS, never BOS.
  std::size_t token_count = 0;
  double total_log2prob = 0.0;
  double entropy = 0.0;
  double perplexity = 0.0;
  std::vector<FoldResult> folds;

  static EvalReport from_totals(std::size_t tokens, double log2prob);

  // Header "fold tokens entropy perplexity", one row per fold, then "all".
  void write_tsv(std::ostream& out) const;
  // Single-line JSON object with the same content.
  std::string to_json() const;
};

// Throws ArgumentError on an empty corpus.
EvalReport evaluate(const SmoothedModel& model, const SentenceCorpus& test);

struct CrossValOptions {
  int folds = 10;
  int order = 2;
  Method method = Method::kMkns;
  std::uint64_t seed = 0;
  bool shuffle = false;
  int min_count = 1;
  ModelOptions model;
  // Worker threads; 0 means one per hardware thread.
  unsigned jobs = 0;
};

// Each fold is scored by a model whose vocabulary, counts and discounts come
// from the remaining folds alone; test tokens outside that vocabulary become
// <unk>. The aggregate is token weighted.
EvalReport cross_validate(const TokenCorpus& corpus, const CrossValOptions& options);

}  // namespace ngs

#endif  // NGS_EVALUATION_HPP_
