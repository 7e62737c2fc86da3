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

// Builders for the six smoothing methods. All interpolated methods recurse
// down to a unigram distribution; orders 1..3 are supported (MDKNSPOMD needs
// order 2 or 3).
//
//   abs        absolute discounting, single D per level, empirical unigram
//   kns        Kneser-Ney, single D per level, continuation-count lower levels
//   mkns       modified Kneser-Ney, D1/D2/D3+ per level, continuation counts
//   mdknspomd  modified Kneser-Ney whose lower levels are built from the
//              discount mass actually removed one level up, which keeps the
//              highest-level marginals c(. w) intact
//   addk, gt   non-interpolated baselines over a uniform base

#ifndef NGS_SMOOTHING_HPP_
#define NGS_SMOOTHING_HPP_

#include <memory>
#include <optional>

#include "ngs/continuation.hpp"
#include "ngs/count_table.hpp"
#include "ngs/discount.hpp"
#include "ngs/model.hpp"

namespace ngs {

using VocabPtr = std::shared_ptr<const Vocabulary>;

struct ModelOptions {
  // Overrides the estimated discounts of the highest level.
  std::optional<DiscountSet> discounts;
  // Overrides the estimated discounts of the bigram level of a trigram model.
  std::optional<DiscountSet> lower_discounts;
  // Add-k constant.
  double delta = 1.0;
  // Gives every predictable word nonzero terminal probability: words the
  // training data never supports (typically <unk>) receive the smallest
  // positive unigram weight before normalization. Leaves models unchanged
  // when every word is already supported.
  bool support_floor = false;
};

// p(w|h) = (delta + c(h w)) / (delta |V| + c(h)), |V| = predictable words.
SmoothedModel build_addk(const CountTable& table, VocabPtr vocab, double delta);

// Adjusted counts r* = (r+1) n_{r+1} / n_r (r* = r when n_{r+1} = 0); each
// history's unseen words share n_1 / N uniformly; rows are renormalized.
SmoothedModel build_good_turing(const CountTable& table, VocabPtr vocab,
                                const ModelOptions& options = {});

SmoothedModel build_abs(const CountTable& table, VocabPtr vocab, const ModelOptions& options = {});
SmoothedModel build_kns(const CountTable& table, VocabPtr vocab, const ModelOptions& options = {});
SmoothedModel build_mkns(const CountTable& table, VocabPtr vocab, const ModelOptions& options = {});

// Bigram form: tiered discounts over the weighted unigram
//   p(w) = sum_c D_c N_c(. w) / sum_c D_c N_c(. .).
SmoothedModel build_mdknspomd_bigram(const CountTable& table, VocabPtr vocab,
                                     const ModelOptions& options = {});

// Recursive trigram form. The bigram level interpolates the pseudo-counts
// A(v w) of a ContinuationTable with one floored discount; its gamma and the
// unigram level use the mass actually subtracted there.
SmoothedModel build_mdknspomd_trigram(const CountTable& table, VocabPtr vocab,
                                      const ModelOptions& options = {});

SmoothedModel build_model(Method method, const CountTable& table, VocabPtr vocab,
                          const ModelOptions& options = {});

// Single discount for the bigram level of a trigram MDKNSPOMD model: the
// n1 / (n1 + 2 n2) estimate over the continuation counts N_{1+}(. v w).
double estimate_continuation_discount(const ContinuationTable& continuation);

}  // namespace ngs

#endif  // NGS_SMOOTHING_HPP_
