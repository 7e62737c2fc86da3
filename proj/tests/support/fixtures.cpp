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

#include "support/fixtures.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <vector>

namespace ngs::testing {

TokenCorpus random_corpus(const RandomCorpusSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> weights;
  for (int i = 0; i < spec.vocab_size; ++i) weights.push_back(1.0 / std::pow(i + 1.0, spec.skew));
  std::discrete_distribution<int> zipf(weights.begin(), weights.end());
  std::uniform_int_distribution<int> length(1, spec.max_length);
  std::uniform_int_distribution<int> shift(0, spec.vocab_size - 1);
  std::bernoulli_distribution follow(0.4);
  std::vector<int> successor(spec.vocab_size);
  for (int& s : successor) s = shift(rng);

  TokenCorpus corpus;
  for (int s = 0; s < spec.sentences; ++s) {
    TokenSentence sentence;
    int prev = -1;
    const int n = length(rng);
    for (int i = 0; i < n; ++i) {
      const int w = prev >= 0 && follow(rng) ? successor[prev] : zipf(rng);
      sentence.push_back("w" + std::to_string(w));
      prev = w;
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

Trained count_corpus(const TokenCorpus& corpus, int order, int min_count) {
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::build(corpus, min_count, order));
  std::vector<Sentence> padded;
  for (const Sentence& s : apply_vocabulary(corpus, *vocab).sentences) {
    padded.push_back(pad_sentence(s, order, *vocab));
  }
  CountTable table = count_ngrams(padded, order, *vocab);
  return {vocab, std::move(table)};
}

bool healthy_histogram(const CountHistogram& hist) {
  return hist[1] > 0 && hist[2] > 0 && hist[3] > 0 && hist[4] > 0;
}

std::string data_path(const std::string& name) { return std::string(NGS_TEST_DATA_DIR) + "/" + name; }

}  // namespace ngs::testing
