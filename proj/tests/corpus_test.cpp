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

#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

TEST(TokenizeTest, LowercasesSplitsAndDropsEmptyLines) {
  const TokenCorpus c = tokenize_and_normalize("The  CAT\tsat\n\n   \nA dog .\r\n");
  ASSERT_EQ(c.sentences.size(), 2u);
  EXPECT_EQ(c.sentences[0], (TokenSentence{"the", "cat", "sat"}));
  EXPECT_EQ(c.sentences[1], (TokenSentence{"a", "dog", "."}));
  EXPECT_EQ(c.token_total(), 6u);
}

TEST(TokenizeTest, LowercasesBeyondAscii) {
  const TokenCorpus c = tokenize_and_normalize("ÀÉÎ ΑΒΓΣ ПРИВЕТ Ÿ Łódź");
  ASSERT_EQ(c.sentences.size(), 1u);
  EXPECT_EQ(c.sentences[0], (TokenSentence{"àéî", "αβγσ", "привет", "ÿ", "łódź"}));
}

TEST(TokenizeTest, InvalidUtf8ReportsByteOffset) {
  try {
    tokenize_and_normalize(std::string("ab\ncd\xff") + "e\n");
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_EQ(e.byte_offset(), 5u);
  }
  // Overlong encoding of '/' and a UTF-16 surrogate.
  EXPECT_THROW(tokenize_and_normalize("\xc0\xaf"), IngestionError);
  EXPECT_THROW(tokenize_and_normalize("\xed\xa0\x80"), IngestionError);
  EXPECT_THROW(tokenize_and_normalize("ok \xe2\x82"), IngestionError);
}

TEST(VocabularyTest, OrdersSentinelsThenFrequencyThenBytes) {
  const TokenCorpus c = tokenize_and_normalize("b a c\nb a\nb z\n");
  const Vocabulary v = Vocabulary::build(c, 1, 3);
  ASSERT_EQ(v.size(), 8u);
  EXPECT_EQ(v.token(0), "<s>");
  EXPECT_EQ(v.token(1), "<s2>");
  EXPECT_EQ(v.token(v.eos()), "</s>");
  EXPECT_EQ(v.token(v.unk()), "<unk>");
  EXPECT_EQ(v.token(4), "b");
  EXPECT_EQ(v.token(5), "a");
  EXPECT_EQ(v.token(6), "c");
  EXPECT_EQ(v.token(7), "z");
  EXPECT_EQ(v.predictable_size(), 6u);
  EXPECT_TRUE(v.is_bos(1));
  EXPECT_FALSE(v.is_bos(v.eos()));
}

TEST(VocabularyTest, MinCountMapsRareWordsToUnk) {
  const TokenCorpus c = tokenize_and_normalize("a a b\na c\n");
  const Vocabulary v = Vocabulary::build(c, 2, 2);
  EXPECT_EQ(v.bos_count(), 1);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v.lookup_text("b"), v.unk());
  EXPECT_NE(v.lookup_text("a"), v.unk());
  const SentenceCorpus ids = apply_vocabulary(c, v);
  EXPECT_EQ(ids.token_total, 5u);
  EXPECT_EQ(ids.sentences[0], (Sentence{*v.find("a"), *v.find("a"), v.unk()}));
}

TEST(VocabularyTest, SentinelSpellingsInTextBecomeUnk) {
  const TokenCorpus c = tokenize_and_normalize("<s> </s> <s2> x\n");
  const Vocabulary v = Vocabulary::build(c, 1, 3);
  EXPECT_EQ(v.size(), 5u);  // sentinels plus "x"
  const SentenceCorpus ids = apply_vocabulary(c, v);
  EXPECT_EQ(ids.sentences[0], (Sentence{v.unk(), v.unk(), v.unk(), *v.find("x")}));
}

TEST(VocabularyTest, FileRoundTrip) {
  const Vocabulary v = Vocabulary::build(tokenize_and_normalize("q w e r t y q\n"), 1, 3);
  std::stringstream s;
  v.write(s);
  EXPECT_EQ(Vocabulary::read(s), v);
  std::istringstream bad("<s>\nword\n");
  EXPECT_THROW(Vocabulary::read(bad), DataError);
}

TEST(PadTest, AddsOrderMinusOneBosAndEos) {
  const Vocabulary v = Vocabulary::build(tokenize_and_normalize("a b\n"), 1, 3);
  const Sentence s{*v.find("a"), *v.find("b")};
  EXPECT_EQ(pad_sentence(s, 3, v), (Sentence{v.bos(2), v.bos(1), s[0], s[1], v.eos()}));
  EXPECT_EQ(pad_sentence(s, 2, v), (Sentence{v.bos(1), s[0], s[1], v.eos()}));
  EXPECT_EQ(pad_sentence(s, 1, v), (Sentence{s[0], s[1], v.eos()}));
  const Vocabulary bigram = Vocabulary::build(tokenize_and_normalize("a b\n"), 1, 2);
  EXPECT_THROW(pad_sentence(s, 3, bigram), ArgumentError);
  EXPECT_THROW(pad_sentence(s, 0, v), ArgumentError);
}

TEST(FoldTest, ExactDivision) {
  const FoldAssignment f = split_folds(10, 10, 0);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(f.members(k), (std::vector<std::size_t>{std::size_t(k)}));
}

TEST(FoldTest, RemainderGoesToFirstFolds) {
  const FoldAssignment f = split_folds(11, 10, 0);
  EXPECT_EQ(f.size(0), 2u);
  for (int k = 1; k < 10; ++k) EXPECT_EQ(f.size(k), 1u);
  EXPECT_EQ(f.members(0), (std::vector<std::size_t>{0, 1}));
}

TEST(FoldTest, ShuffledFoldsPartitionAndRepeat) {
  const FoldAssignment a = split_folds(103, 7, 42, true);
  const FoldAssignment b = split_folds(103, 7, 42, true);
  const FoldAssignment c = split_folds(103, 7, 43, true);
  EXPECT_EQ(a.fold_of, b.fold_of);
  EXPECT_NE(a.fold_of, c.fold_of);
  std::set<std::size_t> seen;
  std::size_t lo = 103, hi = 0;
  for (int k = 0; k < 7; ++k) {
    for (std::size_t i : a.members(k)) EXPECT_TRUE(seen.insert(i).second);
    lo = std::min(lo, a.size(k));
    hi = std::max(hi, a.size(k));
  }
  EXPECT_EQ(seen.size(), 103u);
  EXPECT_LE(hi - lo, 1u);
}

TEST(FoldTest, RejectsBadFoldCounts) {
  EXPECT_THROW(split_folds(10, 1, 0), ArgumentError);
  EXPECT_THROW(split_folds(3, 4, 0), ArgumentError);
}

}  // namespace
}  // namespace ngs
