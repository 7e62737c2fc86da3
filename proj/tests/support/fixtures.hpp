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

#ifndef NGS_TESTS_SUPPORT_FIXTURES_HPP_
#define NGS_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <string>

#include "ngs/corpus.hpp"
#include "ngs/count_table.hpp"
#include "ngs/smoothing.hpp"

namespace ngs::testing {

struct RandomCorpusSpec {
  int vocab_size = 12;
  int sentences = 200;
  int max_length = 8;
  // Zipf exponent of the word distribution.
  double skew = 1.0;
};

// Enough rare words that even unigram tables have n1..n4 > 0.
inline constexpr RandomCorpusSpec kLongTailSpec{60, 300, 8, 1.3};

// Words "w0".."w<n-1>"; sentence lengths uniform in 1..max_length. A Markov
// flavour (each word biased toward a successor) keeps the tables sparse.
TokenCorpus random_corpus(const RandomCorpusSpec& spec, std::uint64_t seed);

struct Trained {
  VocabPtr vocab;
  CountTable table;
};

Trained count_corpus(const TokenCorpus& corpus, int order, int min_count = 1);

// True when n_1..n_4 are all positive, so every discount formula is
// defined without fallbacks.
bool healthy_histogram(const CountHistogram& hist);

// Directory holding tests/data, baked in at configure time.
std::string data_path(const std::string& name);

}  // namespace ngs::testing

#endif  // NGS_TESTS_SUPPORT_FIXTURES_HPP_
