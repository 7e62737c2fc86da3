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

#ifndef NGS_CONTINUATION_HPP_
#define NGS_CONTINUATION_HPP_

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ngs/count_table.hpp"
#include "ngs/discount.hpp"

namespace ngs {

// Predecessor statistics of the bigrams (v w) inside a trigram table.
//
// For each bigram: N_c(. v w) = |{u : c(u v w) = c}| by tier, and, once
// trigram-level discounts are supplied, the pseudo-count
//   A(v, w) = D1 N_1(. v w) + D2 N_2(. v w) + D3+ N_3+(. v w),
// which is the discount mass the trigram level removes from trigrams ending
// in (v w). The NN_{1+} aggregates count bigrams with at least one
// predecessor: NN(. v .) per v, NN(. . w) per w, NN(. . .) overall.
class ContinuationTable {
 public:
  struct Entry {
    NGram bigram;
    TierCounts predecessors;
    double pseudo_count = 0.0;
  };

  static ContinuationTable build(const CountTable& trigrams);
  static ContinuationTable build(const CountTable& trigrams, const DiscountSet& level3);

  // Sorted by bigram.
  std::span<const Entry> entries() const { return entries_; }
  const TierCounts& predecessors(const NGram& bigram) const;
  Count n1plus(const NGram& bigram) const { return predecessors(bigram).n1plus(); }

  bool has_discounts() const { return discounts_.has_value(); }
  const DiscountSet& discounts() const;
  double pseudo_count(const NGram& bigram) const;
  // Sum over w of A(v, w).
  double pseudo_total(WordId v) const;

  Count nn1plus_context(WordId v) const;
  Count nn1plus_final(WordId w) const;
  Count nn1plus_global() const { return entries_.size(); }

  // Tier counts of N_c(. v .) summed over the bigrams sharing v.
  const TierCounts& context_tiers(WordId v) const;
  // Tier counts summed over every bigram.
  const TierCounts& global_tiers() const { return global_tiers_; }

  // n_r over the integer continuation counts N_{1+}(. v w).
  CountHistogram histogram() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<NGram, std::size_t, NGramHash> index_;
  std::unordered_map<WordId, double> pseudo_totals_;
  std::unordered_map<WordId, Count> nn_context_;
  std::unordered_map<WordId, Count> nn_final_;
  std::unordered_map<WordId, TierCounts> context_tiers_;
  TierCounts global_tiers_;
  std::optional<DiscountSet> discounts_;
};

inline ContinuationTable build_continuation(const CountTable& trigrams,
                                            const DiscountSet& level3) {
  return ContinuationTable::build(trigrams, level3);
}

}  // namespace ngs

#endif  // NGS_CONTINUATION_HPP_
