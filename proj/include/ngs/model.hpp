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

#ifndef NGS_MODEL_HPP_
#define NGS_MODEL_HPP_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ngs/corpus.hpp"
#include "ngs/discount.hpp"
#include "ngs/ngram.hpp"

namespace ngs {

enum class Method { kAddK, kGoodTuring, kAbs, kKns, kMkns, kMdknspomd };

std::string_view method_name(Method m);
// Accepts addk, gt, abs, kns, mkns, mdknspomd.
Method parse_method(std::string_view name);

struct UnigramDistribution {
  enum class Variant {
    kUniform,       // order-1 models and the add-k / Good-Turing base
    kEmpirical,     // c(w) / sum c
    kContinuation,  // N_{1+}(. w) / N_{1+}(. .)
    kWeighted,      // discount mass removed from n-grams ending in w, normalized
  };

  Variant variant = Variant::kUniform;
  // Indexed by word id; BOS ids are zero.
  std::vector<double> probs;

  double operator[](WordId w) const { return w < probs.size() ? probs[w] : 0.0; }
};

std::string_view variant_name(UnigramDistribution::Variant v);
UnigramDistribution::Variant parse_variant(std::string_view name);

// One conditional level of an interpolated model:
//   p(w | h) = numerator(h w) / total(h) + gamma(h) * p_lower(w | h')
// where h' drops the first token of h. Histories absent from the level pass
// straight through to the lower distribution.
struct ModelLevel {
  struct History {
    double gamma = 0.0;
    double total = 0.0;
  };

  int history_length = 0;
  std::optional<DiscountSet> discounts;
  std::unordered_map<NGram, History, NGramHash> histories;
  // Discounted numerators; n-grams absent here have numerator 0.
  std::unordered_map<NGram, double, NGramHash> numerators;
  // Entries whose discount exceeded the available (pseudo-)count.
  std::size_t floored = 0;
};

// A smoothed conditional distribution p(w | history), immutable once built.
// Every method is represented as a stack of ModelLevels, highest order
// first, over a terminal unigram distribution.
class SmoothedModel {
 public:
  SmoothedModel(Method method, int order, std::shared_ptr<const Vocabulary> vocab,
                std::vector<ModelLevel> levels, UnigramDistribution unigram,
                std::optional<double> delta = std::nullopt);

  Method method() const { return method_; }
  int order() const { return order_; }
  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> shared_vocab() const { return vocab_; }

  // Throws ArgumentError when the history length is not order - 1 or the
  // word is not predictable.
  double prob(std::span<const WordId> history, WordId word) const;
  double prob(const NGram& history, WordId word) const { return prob(history.ids(), word); }

  // gamma of a top-level history; 1 for histories the model never saw.
  double gamma(const NGram& history) const;
  // Histories of the highest level, sorted.
  std::vector<NGram> observed_histories() const;

  std::span<const ModelLevel> levels() const { return levels_; }
  const UnigramDistribution& unigram() const { return unigram_; }
  // Add-k smoothing parameter, when method() is kAddK.
  std::optional<double> delta() const { return delta_; }

 private:
  Method method_;
  int order_;
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<ModelLevel> levels_;
  UnigramDistribution unigram_;
  std::optional<double> delta_;
};

}  // namespace ngs

#endif  // NGS_MODEL_HPP_
