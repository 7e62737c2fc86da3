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

#include "ngs/continuation.hpp"

#include <algorithm>

#include "ngs/error.hpp"

namespace ngs {
namespace {

const TierCounts kNoTiers{};

void add_tiers(TierCounts& into, const TierCounts& from) {
  into.n1 += from.n1;
  into.n2 += from.n2;
  into.n3 += from.n3;
  into.n4plus += from.n4plus;
}

}  // namespace

ContinuationTable ContinuationTable::build(const CountTable& trigrams) {
  if (trigrams.order() != 3) {
    throw ArgumentError("continuation statistics need an order-3 table");
  }
  std::unordered_map<NGram, TierCounts, NGramHash> tiers;
  for (const auto& e : trigrams.entries()) tiers[e.gram.drop_front()].add(e.count);

  ContinuationTable out;
  out.entries_.reserve(tiers.size());
  for (const auto& [bigram, t] : tiers) out.entries_.push_back({bigram, t, 0.0});
  std::sort(out.entries_.begin(), out.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.bigram < b.bigram; });
  out.index_.reserve(out.entries_.size());
  for (std::size_t i = 0; i < out.entries_.size(); ++i) {
    const Entry& e = out.entries_[i];
    out.index_.emplace(e.bigram, i);
    ++out.nn_context_[e.bigram.front()];
    ++out.nn_final_[e.bigram.back()];
    add_tiers(out.context_tiers_[e.bigram.front()], e.predecessors);
    add_tiers(out.global_tiers_, e.predecessors);
  }
  return out;
}

ContinuationTable ContinuationTable::build(const CountTable& trigrams,
                                           const DiscountSet& level3) {
  ContinuationTable out = build(trigrams);
  out.discounts_ = level3;
  // Tier discounts never exceed their count (D1 < 1, D2 < 2, D3+ < 3), so the
  // tier formula equals the mass actually subtracted from each trigram.
  for (auto& e : out.entries_) {
    const TierCounts& t = e.predecessors;
    e.pseudo_count = level3.d1() * static_cast<double>(t.n1) +
                     level3.d2() * static_cast<double>(t.n2) +
                     level3.d3plus() * static_cast<double>(t.n3plus());
    out.pseudo_totals_[e.bigram.front()] += e.pseudo_count;
  }
  return out;
}

const TierCounts& ContinuationTable::predecessors(const NGram& bigram) const {
  auto it = index_.find(bigram);
  return it == index_.end() ? kNoTiers : entries_[it->second].predecessors;
}

const DiscountSet& ContinuationTable::discounts() const {
  if (!discounts_) throw ArgumentError("continuation table built without discounts");
  return *discounts_;
}

double ContinuationTable::pseudo_count(const NGram& bigram) const {
  discounts();
  auto it = index_.find(bigram);
  return it == index_.end() ? 0.0 : entries_[it->second].pseudo_count;
}

double ContinuationTable::pseudo_total(WordId v) const {
  discounts();
  auto it = pseudo_totals_.find(v);
  return it == pseudo_totals_.end() ? 0.0 : it->second;
}

Count ContinuationTable::nn1plus_context(WordId v) const {
  auto it = nn_context_.find(v);
  return it == nn_context_.end() ? 0 : it->second;
}

Count ContinuationTable::nn1plus_final(WordId w) const {
  auto it = nn_final_.find(w);
  return it == nn_final_.end() ? 0 : it->second;
}

const TierCounts& ContinuationTable::context_tiers(WordId v) const {
  auto it = context_tiers_.find(v);
  return it == context_tiers_.end() ? kNoTiers : it->second;
}

CountHistogram ContinuationTable::histogram() const {
  CountHistogram hist;
  for (const auto& e : entries_) hist.add(e.predecessors.n1plus());
  return hist;
}

}  // namespace ngs
