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

#include "ngs/count_table.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "ngs/error.hpp"

namespace ngs {

void TierCounts::add(Count c) {
  if (c == 1) {
    ++n1;
  } else if (c == 2) {
    ++n2;
  } else if (c == 3) {
    ++n3;
  } else if (c >= 4) {
    ++n4plus;
  }
}

Count TierCounts::exactly(int c) const {
  switch (c) {
    case 1: return n1;
    case 2: return n2;
    case 3: return n3;
    default: throw ArgumentError(fmt::format("exact pattern count N_{} is not tracked", c));
  }
}

Count TierCounts::at_least(int c) const {
  switch (c) {
    case 1: return n1plus();
    case 2: return n2 + n3plus();
    case 3: return n3plus();
    default: throw ArgumentError(fmt::format("pattern count N_{}+ is not tracked", c));
  }
}

void CountHistogram::add(Count r, Count types) {
  if (r == 0 || types == 0) return;
  buckets_[r] += types;
  total_types_ += types;
  total_mass_ += r * types;
}

Count CountHistogram::operator[](Count r) const {
  auto it = buckets_.find(r);
  return it == buckets_.end() ? 0 : it->second;
}

namespace {
const TierCounts kNoCounts{};
}  // namespace

const TierCounts& PatternStats::context(const NGram& h) const {
  auto it = by_context_.find(h);
  return it == by_context_.end() ? kNoCounts : it->second;
}

const TierCounts& PatternStats::final_word(WordId w) const {
  auto it = by_final_.find(w);
  return it == by_final_.end() ? kNoCounts : it->second;
}

Count pattern_count(const PatternStats& stats, const Pattern& pattern, MatchMode mode, int c) {
  const TierCounts* tiers = nullptr;
  switch (pattern.kind) {
    case Pattern::Kind::kContext: tiers = &stats.context(pattern.context); break;
    case Pattern::Kind::kFinal: tiers = &stats.final_word(pattern.word); break;
    case Pattern::Kind::kGlobal: tiers = &stats.global(); break;
  }
  return mode == MatchMode::kExact ? tiers->exactly(c) : tiers->at_least(c);
}

CountTable CountTable::from_entries(int order, std::vector<Entry> entries) {
  if (order < 1 || order > kMaxOrder) throw ArgumentError("order must be in 1..3");
  for (const auto& e : entries) {
    if (e.gram.size() != static_cast<std::size_t>(order)) {
      throw ArgumentError(fmt::format("n-gram of length {} in an order-{} table",
                                      e.gram.size(), order));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.gram < b.gram; });
  CountTable table;
  table.order_ = order;
  for (auto& e : entries) {
    if (!table.entries_.empty() && table.entries_.back().gram == e.gram) {
      table.entries_.back().count += e.count;
    } else {
      table.entries_.push_back(e);
    }
  }
  std::erase_if(table.entries_, [](const Entry& e) { return e.count == 0; });
  table.freeze();
  return table;
}

void CountTable::freeze() {
  index_.reserve(entries_.size());
  for (const auto& e : entries_) {
    index_.emplace(e.gram, e.count);
    const NGram h = e.gram.history();
    context_totals_[h] += e.count;
    final_totals_[e.gram.back()] += e.count;
    total_ += e.count;
    for (WordId id : e.gram.ids()) id_bound_ = std::max(id_bound_, id + 1);
    patterns_.by_context_[h].add(e.count);
    patterns_.by_final_[e.gram.back()].add(e.count);
    patterns_.global_.add(e.count);
    histogram_.add(e.count);
  }
}

Count CountTable::count(const NGram& gram) const {
  auto it = index_.find(gram);
  return it == index_.end() ? 0 : it->second;
}

Count CountTable::context_total(const NGram& history) const {
  auto it = context_totals_.find(history);
  return it == context_totals_.end() ? 0 : it->second;
}

std::vector<NGram> CountTable::histories() const {
  std::vector<NGram> out;
  for (const auto& e : entries_) {
    NGram h = e.gram.history();
    if (out.empty() || out.back() != h) out.push_back(h);
  }
  return out;
}

Count CountTable::final_total(WordId w) const {
  auto it = final_totals_.find(w);
  return it == final_totals_.end() ? 0 : it->second;
}

CountTable CountTable::drop_first() const {
  if (order_ < 2) throw ArgumentError("cannot lower an order-1 table");
  std::vector<Entry> lower;
  lower.reserve(entries_.size());
  for (const auto& e : entries_) lower.push_back({e.gram.drop_front(), e.count});
  return from_entries(order_ - 1, std::move(lower));
}

void CountTable::write_tsv(std::ostream& out, const Vocabulary& vocab) const {
  out << "#order=" << order_ << '\n';
  for (const auto& e : entries_) {
    for (std::size_t i = 0; i < e.gram.size(); ++i) {
      if (i > 0) out << ' ';
      out << vocab.token(e.gram[i]);
    }
    out << '\t' << e.count << '\n';
  }
}

CountTable count_ngrams(std::span<const Sentence> padded, int order, const Vocabulary& vocab) {
  if (order < 1 || order > kMaxOrder) throw ArgumentError("order must be in 1..3");
  std::unordered_map<NGram, Count, NGramHash> counts;
  for (std::size_t s = 0; s < padded.size(); ++s) {
    const Sentence& sentence = padded[s];
    if (sentence.empty() || sentence.back() != vocab.eos()) {
      throw DataError(fmt::format("sentence {} is not padded (no final </s>)", s));
    }
    if (sentence.size() < static_cast<std::size_t>(order)) {
      throw DataError(fmt::format("sentence {} is shorter than the model order", s));
    }
    for (std::size_t i = order - 1; i < sentence.size(); ++i) {
      if (vocab.is_bos(sentence[i])) continue;
      ++counts[NGram(std::span(sentence).subspan(i + 1 - order, order))];
    }
  }
  std::vector<CountTable::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [gram, c] : counts) entries.push_back({gram, c});
  return CountTable::from_entries(order, std::move(entries));
}

CountHistogram count_of_counts(const CountTable& table) { return table.histogram(); }

namespace {

struct RawRow {
  std::vector<std::string> tokens;
  Count count;
};

struct RawTable {
  int order = 0;
  std::vector<RawRow> rows;
};

std::vector<std::string> split_spaces(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

RawTable parse_tsv(std::istream& in) {
  RawTable raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (raw.order == 0) {
      constexpr std::string_view kHeader = "#order=";
      if (line.rfind(kHeader, 0) != 0) {
        throw DataError("count TSV must start with a '#order=n' header");
      }
      const auto digits = std::string_view(line).substr(kHeader.size());
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), raw.order);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || raw.order < 1 ||
          raw.order > kMaxOrder) {
        throw DataError(fmt::format("bad order in header '{}'", line));
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(fmt::format("line {}: expected tokens<TAB>count", lineno));
    }
    RawRow row;
    row.tokens = split_spaces(line.substr(0, tab));
    if (row.tokens.size() != static_cast<std::size_t>(raw.order)) {
      throw DataError(fmt::format("line {}: expected {} tokens", lineno, raw.order));
    }
    const auto field = std::string_view(line).substr(tab + 1);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), row.count);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw DataError(fmt::format("line {}: bad count '{}'", lineno, field));
    }
    raw.rows.push_back(std::move(row));
  }
  if (raw.order == 0) throw DataError("count TSV is empty (missing '#order=n' header)");
  return raw;
}

CountTable to_table(const RawTable& raw, const Vocabulary& vocab) {
  std::vector<CountTable::Entry> entries;
  entries.reserve(raw.rows.size());
  for (const auto& row : raw.rows) {
    std::vector<WordId> ids;
    for (const auto& tok : row.tokens) {
      auto id = vocab.find(tok);
      if (!id) throw DataError(fmt::format("token '{}' is not in the vocabulary", tok));
      ids.push_back(*id);
    }
    entries.push_back({NGram(ids), row.count});
  }
  return CountTable::from_entries(raw.order, std::move(entries));
}

// k for "<s>" (1) and "<sK>", 0 otherwise.
int bos_index(std::string_view tok) {
  if (tok == kBos) return 1;
  if (tok.size() < 4 || tok.substr(0, 2) != "<s" || tok.back() != '>') return 0;
  int k = 0;
  const auto digits = tok.substr(2, tok.size() - 3);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  return (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 2) ? k : 0;
}

}  // namespace

LoadedCounts read_count_tsv(std::istream& in) {
  const RawTable raw = parse_tsv(in);
  int bos_count = bos_count_for_order(raw.order);
  std::map<std::string, Count> marginal;
  for (const auto& row : raw.rows) {
    for (std::size_t i = 0; i < row.tokens.size(); ++i) {
      const auto& tok = row.tokens[i];
      if (const int k = bos_index(tok); k > 0) {
        bos_count = std::max(bos_count, k);
        continue;
      }
      if (tok == kEos || tok == kUnk) continue;
      marginal[tok] += (i + 1 == row.tokens.size()) ? row.count : 0;
    }
  }
  std::vector<std::pair<std::string, Count>> ranked(marginal.begin(), marginal.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> regular;
  for (auto& [tok, c] : ranked) regular.push_back(tok);
  Vocabulary vocab = Vocabulary::from_regular_tokens(regular, bos_count);
  CountTable table = to_table(raw, vocab);
  return {std::move(vocab), std::move(table)};
}

CountTable read_count_tsv(std::istream& in, const Vocabulary& vocab) {
  return to_table(parse_tsv(in), vocab);
}

}  // namespace ngs
