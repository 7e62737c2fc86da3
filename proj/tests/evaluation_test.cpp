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

#include "ngs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ngs/error.hpp"
#include "support/fixtures.hpp"

namespace ngs {
namespace {

// A model that is uniform over the predictable ids: add-k on an empty table.
SmoothedModel uniform_model(int regular_words, int order) {
  std::vector<std::string> words;
  for (int i = 0; i < regular_words; ++i) words.push_back("t" + std::to_string(i));
  auto vocab = std::make_shared<const Vocabulary>(
      Vocabulary::from_regular_tokens(words, bos_count_for_order(order)));
  return build_addk(CountTable::from_entries(order, {}), vocab, 1.0);
}

TEST(SentenceLogprobTest, UniformModel) {
  const SmoothedModel m = uniform_model(6, 2);  // 8 predictable ids
  const Sentence s{3, 4};
  const SentenceScore score = sentence_logprob(m, pad_sentence(s, 2, m.vocab()));
  EXPECT_EQ(score.predicted, 3u);
  EXPECT_DOUBLE_EQ(score.log2prob, -9.0);
}

TEST(SentenceLogprobTest, CountsWordsAndEosOnly) {
  const SmoothedModel m = uniform_model(6, 3);
  EXPECT_EQ(sentence_logprob(m, pad_sentence(Sentence{5}, 3, m.vocab())).predicted, 2u);
  const SmoothedModel bigram = uniform_model(6, 2);
  EXPECT_EQ(sentence_logprob(bigram, pad_sentence(Sentence{5}, 2, bigram.vocab())).predicted, 2u);
  EXPECT_THROW(sentence_logprob(m, Sentence{0, 1}), ArgumentError);
}

TEST(EvaluateTest, EntropyEightBits) {
  const SmoothedModel m = uniform_model(254, 2);  // 256 predictable ids
  SentenceCorpus test;
  test.sentences = {{10, 11, 12}, {200}};
  const EvalReport r = evaluate(m, test);
  EXPECT_EQ(r.token_count, 6u);
  EXPECT_DOUBLE_EQ(r.entropy, 8.0);
  EXPECT_DOUBLE_EQ(r.perplexity, 256.0);
  EXPECT_THROW(evaluate(m, SentenceCorpus{}), ArgumentError);
}

TEST(EvaluateTest, ZeroProbabilityNamesTheNgram) {
  const testing::Trained t =
      testing::count_corpus(testing::random_corpus(testing::RandomCorpusSpec{}, 5), 2);
  const SmoothedModel m = build_mkns(t.table, t.vocab);  // no support floor
  SentenceCorpus test;
  test.sentences = {{t.vocab->unk()}};
  try {
    evaluate(m, test);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("<s> <unk>"), std::string::npos) << e.what();
  }
}

TEST(EvaluateTest, OrderInvarianceAndAdditivity) {
  const testing::Trained t =
      testing::count_corpus(testing::random_corpus(testing::RandomCorpusSpec{}, 6), 3);
  ModelOptions floor;
  floor.support_floor = true;
  const SmoothedModel m = build_mdknspomd_trigram(t.table, t.vocab, floor);
  const SentenceCorpus all =
      apply_vocabulary(testing::random_corpus(testing::RandomCorpusSpec{}, 7), *t.vocab);
  SentenceCorpus reversed = all;
  std::reverse(reversed.sentences.begin(), reversed.sentences.end());
  const EvalReport a = evaluate(m, all);
  EXPECT_NEAR(evaluate(m, reversed).entropy, a.entropy, 1e-12);
  SentenceCorpus first, second;
  for (std::size_t i = 0; i < all.sentences.size(); ++i) {
    (i < 50 ? first : second).sentences.push_back(all.sentences[i]);
  }
  const EvalReport x = evaluate(m, first), y = evaluate(m, second);
  const double weighted = (x.entropy * x.token_count + y.entropy * y.token_count) /
                          static_cast<double>(x.token_count + y.token_count);
  EXPECT_NEAR(a.entropy, weighted, 1e-12);
  EXPECT_NEAR(a.perplexity, std::exp2(a.entropy), 1e-9 * a.perplexity);
}

TokenCorpus doubled_corpus() {
  TokenCorpus half = testing::random_corpus(testing::RandomCorpusSpec{}, 12);
  TokenCorpus both = half;
  both.sentences.insert(both.sentences.end(), half.sentences.begin(), half.sentences.end());
  return both;
}

TEST(CrossValidateTest, SymmetricHalvesGiveEqualFolds) {
  CrossValOptions o;
  o.folds = 2;
  o.order = 2;
  o.method = Method::kKns;
  const EvalReport r = cross_validate(doubled_corpus(), o);
  ASSERT_EQ(r.folds.size(), 2u);
  EXPECT_DOUBLE_EQ(r.folds[0].entropy, r.folds[1].entropy);
  EXPECT_EQ(r.folds[0].token_count + r.folds[1].token_count, r.token_count);
  EXPECT_DOUBLE_EQ(r.total_log2prob, r.folds[0].total_log2prob + r.folds[1].total_log2prob);
}

TEST(CrossValidateTest, EveryMethodScoresUnseenWords) {
  const TokenCorpus corpus = testing::random_corpus(testing::kLongTailSpec, 13);
  for (int order = 1; order <= 3; ++order) {
    for (Method method : {Method::kAddK, Method::kGoodTuring, Method::kAbs, Method::kKns,
                          Method::kMkns, Method::kMdknspomd}) {
      if (method == Method::kMdknspomd && order == 1) continue;
      CrossValOptions o;
      o.folds = 5;
      o.order = order;
      o.method = method;
      o.min_count = order == 1 ? 1 : 3;
      o.jobs = 2;
      const EvalReport r = cross_validate(corpus, o);
      EXPECT_TRUE(std::isfinite(r.entropy)) << method_name(method);
      EXPECT_EQ(r.token_count, corpus.token_total() + corpus.sentences.size());
    }
  }
}

TEST(CrossValidateTest, DeterministicAcrossJobCounts) {
  CrossValOptions o;
  o.folds = 4;
  o.order = 3;
  o.method = Method::kMdknspomd;
  o.shuffle = true;
  o.seed = 99;
  const TokenCorpus corpus = testing::random_corpus(testing::RandomCorpusSpec{}, 14);
  o.jobs = 1;
  const EvalReport a = cross_validate(corpus, o);
  o.jobs = 4;
  const EvalReport b = cross_validate(corpus, o);
  EXPECT_EQ(a.to_json(), b.to_json());
  o.seed = 100;
  EXPECT_NE(cross_validate(corpus, o).to_json(), a.to_json());
}

TEST(EvalReportTest, TsvAndJson) {
  CrossValOptions o;
  o.folds = 3;
  const EvalReport r = cross_validate(testing::random_corpus(testing::RandomCorpusSpec{}, 15), o);
  std::ostringstream out;
  r.write_tsv(out);
  std::istringstream lines(out.str());
  std::string line, last;
  std::getline(lines, line);
  EXPECT_EQ(line, "fold\ttokens\tentropy\tperplexity");
  int rows = 0;
  for (; std::getline(lines, line); ++rows) last = line;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(last.rfind("all\t", 0), 0u);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["tokens"].get<std::size_t>(), r.token_count);
  EXPECT_EQ(j["folds"].size(), 3u);
  EXPECT_DOUBLE_EQ(j["perplexity"].get<double>(), r.perplexity);
  EXPECT_THROW(EvalReport::from_totals(0, 0.0), ArgumentError);
}

}  // namespace
}  // namespace ngs
