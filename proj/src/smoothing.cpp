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

#include "ngs/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

using Variant = UnigramDistribution::Variant;

// A (pseudo-)count attached to an n-gram. Sequences of rows are sorted by
// gram so rows sharing a history are contiguous.
struct Row {
  NGram gram;
  double value = 0.0;
};

// Per final word: how many histories it follows and how much discount mass
// the level removed from it.
struct FinalStats {
  std::unordered_map<WordId, double> distinct_histories;
  std::unordered_map<WordId, double> removed;
};

std::vector<Row> rows_of(const CountTable& table) {
  std::vector<Row> rows;
  rows.reserve(table.size());
  for (const auto& e : table.entries()) rows.push_back({e.gram, static_cast<double>(e.count)});
  return rows;
}

void check_vocab(const CountTable& table, const Vocabulary& vocab) {
  if (table.id_bound() > vocab.size()) {
    throw ArgumentError("count table uses ids outside the vocabulary");
  }
  for (const auto& e : table.entries()) {
    if (vocab.is_bos(e.gram.back())) {
      throw DataError("count table predicts a BOS sentinel");
    }
  }
}

// Builds one interpolated level by discounting each row and collecting the
// removed mass as the history's gamma.
ModelLevel discount_level(std::span<const Row> rows, int history_length,
                          const DiscountSet& discounts, FinalStats* finals) {
  ModelLevel level;
  level.history_length = history_length;
  level.discounts = discounts;
  level.numerators.reserve(rows.size());
  std::size_t i = 0;
  while (i < rows.size()) {
    const NGram h = rows[i].gram.history();
    std::size_t j = i;
    double total = 0.0;
    double removed = 0.0;
    for (; j < rows.size() && rows[j].gram.history() == h; ++j) {
      const double value = rows[j].value;
      const double nominal = discounts.is_single()
                                 ? discounts.d1()
                                 : discounts.for_count(static_cast<Count>(std::llround(value)));
      const double sub = discounts.subtracted(value);
      if (nominal > value) ++level.floored;
      total += value;
      removed += sub;
      if (value - sub > 0.0) level.numerators.emplace(rows[j].gram, value - sub);
      if (finals != nullptr) {
        finals->distinct_histories[rows[j].gram.back()] += 1.0;
        finals->removed[rows[j].gram.back()] += sub;
      }
    }
    if (total > 0.0) level.histories.emplace(h, ModelLevel::History{removed / total, total});
    i = j;
  }
  return level;
}

UnigramDistribution normalize_weights(const Vocabulary& vocab,
                                      const std::unordered_map<WordId, double>& weights,
                                      Variant variant, bool support_floor) {
  UnigramDistribution dist;
  dist.variant = variant;
  dist.probs.assign(vocab.size(), 0.0);
  double min_positive = std::numeric_limits<double>::infinity();
  for (WordId w : vocab.predictable()) {
    auto it = weights.find(w);
    if (it != weights.end() && it->second > 0.0) {
      dist.probs[w] = it->second;
      min_positive = std::min(min_positive, it->second);
    }
  }
  if (!std::isfinite(min_positive)) {
    // Nothing observed: fall back to uniform.
    for (WordId w : vocab.predictable()) dist.probs[w] = 1.0;
  } else if (support_floor) {
    for (WordId w : vocab.predictable()) {
      if (dist.probs[w] == 0.0) dist.probs[w] = min_positive;
    }
  }
  double sum = 0.0;
  for (double p : dist.probs) sum += p;
  for (double& p : dist.probs) p /= sum;
  return dist;
}

UnigramDistribution uniform(const Vocabulary& vocab) {
  return normalize_weights(vocab, {}, Variant::kUniform, false);
}

void require_single(const DiscountSet& d, Method method) {
  if (!d.is_single()) {
    throw ArgumentError(fmt::format("{} takes a single discount", method_name(method)));
  }
}

DiscountSet pick(const std::optional<DiscountSet>& override_value, const CountHistogram& hist,
                 bool tiered) {
  if (override_value) return *override_value;
  return tiered ? estimate_discounts_triple(hist)
                : DiscountSet::single(estimate_discount_single(hist));
}

// Shared builder for abs, kns and mkns, which differ only in how many
// discounts each level gets and in what the lower levels count.
SmoothedModel build_discounted(Method method, const CountTable& table, VocabPtr vocab,
                               const ModelOptions& options) {
  check_vocab(table, *vocab);
  const bool tiered = method == Method::kMkns;
  const bool continuation = method != Method::kAbs;
  if (!tiered && options.discounts) require_single(*options.discounts, method);
  if (!tiered && options.lower_discounts) require_single(*options.lower_discounts, method);

  const std::vector<Row> top_rows = rows_of(table);
  const DiscountSet top = pick(options.discounts, table.histogram(), tiered);
  std::vector<ModelLevel> levels;
  FinalStats finals;

  if (table.order() == 1) {
    levels.push_back(discount_level(top_rows, 0, top, nullptr));
    return SmoothedModel(method, 1, vocab, std::move(levels), uniform(*vocab));
  }
  if (table.order() == 2) {
    levels.push_back(discount_level(top_rows, 1, top, &finals));
  } else {
    levels.push_back(discount_level(top_rows, 2, top, nullptr));
    std::vector<Row> lower_rows;
    CountHistogram lower_hist;
    if (continuation) {
      const ContinuationTable cont = ContinuationTable::build(table);
      for (const auto& e : cont.entries()) {
        lower_rows.push_back({e.bigram, static_cast<double>(e.predecessors.n1plus())});
      }
      lower_hist = cont.histogram();
    } else {
      const CountTable bigrams = table.drop_first();
      lower_rows = rows_of(bigrams);
      lower_hist = bigrams.histogram();
    }
    const DiscountSet lower = pick(options.lower_discounts, lower_hist, tiered);
    levels.push_back(discount_level(lower_rows, 1, lower, &finals));
  }

  UnigramDistribution unigram;
  if (continuation) {
    unigram = normalize_weights(*vocab, finals.distinct_histories, Variant::kContinuation,
                                options.support_floor);
  } else {
    std::unordered_map<WordId, double> empirical;
    for (const auto& [w, c] : table.final_totals()) empirical[w] = static_cast<double>(c);
    unigram = normalize_weights(*vocab, empirical, Variant::kEmpirical, options.support_floor);
  }
  return SmoothedModel(method, table.order(), std::move(vocab), std::move(levels),
                       std::move(unigram));
}

}  // namespace

SmoothedModel build_addk(const CountTable& table, VocabPtr vocab, double delta) {
  check_vocab(table, *vocab);
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ArgumentError(fmt::format("add-k delta must be > 0, got {}", delta));
  }
  const double mass = delta * static_cast<double>(vocab->predictable_size());
  ModelLevel level;
  level.history_length = table.order() - 1;
  for (const auto& [h, total] : table.context_totals()) {
    const double denom = mass + static_cast<double>(total);
    level.histories.emplace(h, ModelLevel::History{mass / denom, denom});
  }
  for (const auto& e : table.entries()) {
    level.numerators.emplace(e.gram, static_cast<double>(e.count));
  }
  std::vector<ModelLevel> levels;
  levels.push_back(std::move(level));
  UnigramDistribution base = uniform(*vocab);
  return SmoothedModel(Method::kAddK, table.order(), std::move(vocab), std::move(levels),
                       std::move(base), delta);
}

SmoothedModel build_good_turing(const CountTable& table, VocabPtr vocab,
                                const ModelOptions& options) {
  check_vocab(table, *vocab);
  const CountHistogram& hist = table.histogram();
  auto adjusted = [&hist](Count r) {
    const Count next = hist[r + 1];
    if (next == 0) return static_cast<double>(r);
    return static_cast<double>(r + 1) * static_cast<double>(next) / static_cast<double>(hist[r]);
  };
  double unseen_mass = static_cast<double>(hist[1]);
  if (options.support_floor) unseen_mass = std::max(unseen_mass, 1.0);
  const double vocab_size = static_cast<double>(vocab->predictable_size());

  ModelLevel level;
  level.history_length = table.order() - 1;
  const auto entries = table.entries();
  std::size_t i = 0;
  while (i < entries.size()) {
    const NGram h = entries[i].gram.history();
    std::size_t j = i;
    double seen = 0.0;
    for (; j < entries.size() && entries[j].gram.history() == h; ++j) {
      seen += adjusted(entries[j].count);
    }
    const double unseen_words = vocab_size - static_cast<double>(j - i);
    const double unseen = unseen_words > 0.0 ? unseen_mass : 0.0;
    const double z = seen + unseen;
    // Per-word probability of each unseen word in this history, carried by
    // gamma over the uniform base; seen words carry the difference.
    const double q = unseen_words > 0.0 ? unseen / (unseen_words * z) : 0.0;
    for (std::size_t k = i; k < j; ++k) {
      level.numerators.emplace(entries[k].gram, adjusted(entries[k].count) / z - q);
    }
    level.histories.emplace(h, ModelLevel::History{q * vocab_size, 1.0});
    i = j;
  }
  std::vector<ModelLevel> levels;
  levels.push_back(std::move(level));
  UnigramDistribution base = uniform(*vocab);
  return SmoothedModel(Method::kGoodTuring, table.order(), std::move(vocab), std::move(levels),
                       std::move(base));
}

SmoothedModel build_abs(const CountTable& table, VocabPtr vocab, const ModelOptions& options) {
  return build_discounted(Method::kAbs, table, std::move(vocab), options);
}

SmoothedModel build_kns(const CountTable& table, VocabPtr vocab, const ModelOptions& options) {
  return build_discounted(Method::kKns, table, std::move(vocab), options);
}

SmoothedModel build_mkns(const CountTable& table, VocabPtr vocab, const ModelOptions& options) {
  return build_discounted(Method::kMkns, table, std::move(vocab), options);
}

SmoothedModel build_mdknspomd_bigram(const CountTable& table, VocabPtr vocab,
                                     const ModelOptions& options) {
  if (table.order() != 2) throw ArgumentError("bigram MDKNSPOMD needs an order-2 table");
  check_vocab(table, *vocab);
  const DiscountSet top = pick(options.discounts, table.histogram(), true);
  FinalStats finals;
  std::vector<ModelLevel> levels;
  levels.push_back(discount_level(rows_of(table), 1, top, &finals));
  UnigramDistribution unigram =
      normalize_weights(*vocab, finals.removed, Variant::kWeighted, options.support_floor);
  return SmoothedModel(Method::kMdknspomd, 2, std::move(vocab), std::move(levels),
                       std::move(unigram));
}

double estimate_continuation_discount(const ContinuationTable& continuation) {
  return estimate_discount_single(continuation.histogram());
}

SmoothedModel build_mdknspomd_trigram(const CountTable& table, VocabPtr vocab,
                                      const ModelOptions& options) {
  if (table.order() != 3) throw ArgumentError("trigram MDKNSPOMD needs an order-3 table");
  check_vocab(table, *vocab);
  if (options.lower_discounts) require_single(*options.lower_discounts, Method::kMdknspomd);
  const DiscountSet top = pick(options.discounts, table.histogram(), true);
  std::vector<ModelLevel> levels;
  levels.push_back(discount_level(rows_of(table), 2, top, nullptr));

  const ContinuationTable cont = build_continuation(table, top);
  std::vector<Row> pseudo;
  pseudo.reserve(cont.entries().size());
  for (const auto& e : cont.entries()) pseudo.push_back({e.bigram, e.pseudo_count});
  const DiscountSet lower = options.lower_discounts
                                ? *options.lower_discounts
                                : DiscountSet::single(estimate_continuation_discount(cont));
  FinalStats finals;
  levels.push_back(discount_level(pseudo, 1, lower, &finals));

  UnigramDistribution unigram =
      normalize_weights(*vocab, finals.removed, Variant::kWeighted, options.support_floor);
  return SmoothedModel(Method::kMdknspomd, 3, std::move(vocab), std::move(levels),
                       std::move(unigram));
}

SmoothedModel build_model(Method method, const CountTable& table, VocabPtr vocab,
                          const ModelOptions& options) {
  if (!vocab) throw ArgumentError("model needs a vocabulary");
  switch (method) {
    case Method::kAddK: return build_addk(table, std::move(vocab), options.delta);
    case Method::kGoodTuring: return build_good_turing(table, std::move(vocab), options);
    case Method::kAbs: return build_abs(table, std::move(vocab), options);
    case Method::kKns: return build_kns(table, std::move(vocab), options);
    case Method::kMkns: return build_mkns(table, std::move(vocab), options);
    case Method::kMdknspomd:
      if (table.order() == 2) return build_mdknspomd_bigram(table, std::move(vocab), options);
      if (table.order() == 3) return build_mdknspomd_trigram(table, std::move(vocab), options);
      throw ArgumentError("mdknspomd requires order 2 or 3");
  }
  throw InvariantError("unhandled smoothing method");
}

}  // namespace ngs
