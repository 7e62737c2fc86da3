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

// Immutable n-gram count tables and the statistics derived from them:
// pattern counts N_c / N_{c+}, count-of-counts histograms.

#ifndef NGS_COUNT_TABLE_HPP_
#define NGS_COUNT_TABLE_HPP_

#include <iosfwd>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "ngs/corpus.hpp"
#include "ngs/ngram.hpp"

namespace ngs {

// Number of completions of a pattern with count exactly 1, 2, 3 and >= 4.
struct TierCounts {
  Count n1 = 0;
  Count n2 = 0;
  Count n3 = 0;
  Count n4plus = 0;

  void add(Count c);
  Count exactly(int c) const;
  Count at_least(int c) const;
  Count n3plus() const { return n3 + n4plus; }
  Count n1plus() const { return n1 + n2 + n3 + n4plus; }

  friend bool operator==(const TierCounts&, const TierCounts&) = default;
};

// n_r: number of distinct n-gram types seen exactly r times.
class CountHistogram {
 public:
  void add(Count r, Count types = 1);
  Count operator[](Count r) const;
  Count total_types() const { return total_types_; }
  // Sum over r of r * n_r.
  Count total_mass() const { return total_mass_; }
  const std::map<Count, Count>& buckets() const { return buckets_; }

 private:
  std::map<Count, Count> buckets_;
  Count total_types_ = 0;
  Count total_mass_ = 0;
};

// The three pattern shapes of the N functions: (h .) extensions of a context,
// (. w) predecessors of a final word, and (. .) every stored n-gram.
struct Pattern {
  enum class Kind { kContext, kFinal, kGlobal };
  Kind kind = Kind::kGlobal;
  NGram context;
  WordId word = 0;

  static Pattern of_context(NGram h) { return {Kind::kContext, h, 0}; }
  static Pattern of_final(WordId w) { return {Kind::kFinal, {}, w}; }
  static Pattern global() { return {}; }
};

enum class MatchMode { kExact, kAtLeast };

class PatternStats {
 public:
  const TierCounts& context(const NGram& h) const;
  const TierCounts& final_word(WordId w) const;
  const TierCounts& global() const { return global_; }

 private:
  friend class CountTable;
  std::unordered_map<NGram, TierCounts, NGramHash> by_context_;
  std::unordered_map<WordId, TierCounts> by_final_;
  TierCounts global_;
};

// N_c (exact, c in 1..3) or N_{c+} (at-least, c in 1..3) for a pattern.
Count pattern_count(const PatternStats& stats, const Pattern& pattern, MatchMode mode, int c);

// Sparse order-n counts, frozen at construction. Entries are sorted by id
// sequence, so all extensions of one context are contiguous.
class CountTable {
 public:
  struct Entry {
    NGram gram;
    Count count = 0;
  };

  CountTable() = default;
  // Duplicate n-grams are summed; zero counts are dropped.
  static CountTable from_entries(int order, std::vector<Entry> entries);

  int order() const { return order_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  Count count(const NGram& gram) const;
  Count context_total(const NGram& history) const;
  const std::unordered_map<NGram, Count, NGramHash>& context_totals() const {
    return context_totals_;
  }
  // Observed histories, sorted.
  std::vector<NGram> histories() const;
  // Sum of c(h w) over all h: the column marginal of w.
  Count final_total(WordId w) const;
  const std::unordered_map<WordId, Count>& final_totals() const { return final_totals_; }
  Count total() const { return total_; }
  // Largest id occurring anywhere in the table, plus one.
  WordId id_bound() const { return id_bound_; }

  const PatternStats& patterns() const { return patterns_; }
  const CountHistogram& histogram() const { return histogram_; }

  // Order n-1 table with c(v w) = sum over u of c(u v w).
  CountTable drop_first() const;

  // "#order=n" header, then "tok_1 ... tok_n<TAB>count" sorted by ids.
  void write_tsv(std::ostream& out, const Vocabulary& vocab) const;

 private:
  void freeze();

  int order_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<NGram, Count, NGramHash> index_;
  std::unordered_map<NGram, Count, NGramHash> context_totals_;
  std::unordered_map<WordId, Count> final_totals_;
  Count total_ = 0;
  WordId id_bound_ = 0;
  PatternStats patterns_;
  CountHistogram histogram_;
};

// Counts every length-n window of every padded sentence whose final token is
// not a BOS sentinel. Throws DataError for a sentence without a final EOS.
CountTable count_ngrams(std::span<const Sentence> padded, int order, const Vocabulary& vocab);

CountHistogram count_of_counts(const CountTable& table);

struct LoadedCounts {
  Vocabulary vocab;
  CountTable table;
};

// Reads a count TSV. Without a vocabulary, one is built from the file's tokens
// (regular tokens ordered by descending column marginal, ties
// lexicographically). With one, unknown tokens are a DataError.
LoadedCounts read_count_tsv(std::istream& in);
CountTable read_count_tsv(std::istream& in, const Vocabulary& vocab);

}  // namespace ngs

#endif  // NGS_COUNT_TABLE_HPP_
