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

#include "ngs/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

std::string join_tokens(const NGram& g, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += vocab.token(g[i]);
  }
  return out;
}

double parse_double(std::string_view field, std::size_t lineno) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw DataError(fmt::format("model line {}: bad number '{}'", lineno, field));
  }
  return v;
}

// "key=value" fields separated by spaces, e.g. "#method=kns #order=2".
std::map<std::string, std::string> parse_fields(std::string_view line, char prefix) {
  std::map<std::string, std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = line.find(' ', i);
    if (j == std::string_view::npos) j = line.size();
    auto field = line.substr(i, j - i);
    if (!field.empty() && field.front() == prefix) field.remove_prefix(1);
    const auto eq = field.find('=');
    if (eq != std::string_view::npos) {
      out.emplace(std::string(field.substr(0, eq)), std::string(field.substr(eq + 1)));
    }
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  std::string expect() {
    std::string line;
    if (!next(line)) throw DataError("model dump ends before \\end");
    return line;
  }
  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

NGram parse_gram(std::string_view tokens, const Vocabulary& vocab, std::size_t lineno) {
  std::vector<WordId> ids;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t j = tokens.find(' ', i);
    if (j == std::string_view::npos) j = tokens.size();
    if (j > i) {
      auto id = vocab.find(tokens.substr(i, j - i));
      if (!id) {
        throw DataError(fmt::format("model line {}: unknown token '{}'", lineno,
                                    tokens.substr(i, j - i)));
      }
      ids.push_back(*id);
    }
    i = j + 1;
  }
  return NGram(ids);
}

}  // namespace

void write_model(std::ostream& out, const SmoothedModel& model) {
  const Vocabulary& vocab = model.vocab();
  std::vector<std::string> discount_fields;
  for (const auto& level : model.levels()) {
    discount_fields.push_back(level.discounts ? level.discounts->to_string() : "");
  }
  out << fmt::format("#method={} #order={} #discounts={}", method_name(model.method()),
                     model.order(), fmt::join(discount_fields, ";"));
  if (model.delta()) out << fmt::format(" #delta={}", *model.delta());
  out << '\n';

  out << "\\unigram variant=" << variant_name(model.unigram().variant) << '\n';
  for (WordId w = 0; w < vocab.size(); ++w) {
    out << fmt::format("{}\t{}\n", vocab.token(w), model.unigram()[w]);
  }

  for (const auto& level : model.levels()) {
    out << fmt::format("\\level history_length={} discounts={} floored={}\n",
                       level.history_length,
                       level.discounts ? level.discounts->to_string() : "-", level.floored);
    std::vector<std::pair<NGram, ModelLevel::History>> histories(level.histories.begin(),
                                                                 level.histories.end());
    std::sort(histories.begin(), histories.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out << "\\histories\n";
    for (const auto& [h, weights] : histories) {
      out << fmt::format("{}\t{}\t{}\n", join_tokens(h, vocab), weights.gamma, weights.total);
    }
    std::vector<std::pair<NGram, double>> numerators(level.numerators.begin(),
                                                     level.numerators.end());
    std::sort(numerators.begin(), numerators.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out << "\\ngrams\n";
    for (const auto& [g, num] : numerators) {
      out << fmt::format("{}\t{}\n", join_tokens(g, vocab), num);
    }
  }
  out << "\\end\n";
}

SmoothedModel read_model(std::istream& in) {
  LineReader reader(in);
  const auto header = parse_fields(reader.expect(), '#');
  if (!header.contains("method") || !header.contains("order")) {
    throw DataError("model dump header must carry #method and #order");
  }
  const Method method = parse_method(header.at("method"));
  const int order = static_cast<int>(parse_double(header.at("order"), 1));
  std::optional<double> delta;
  if (header.contains("delta")) delta = parse_double(header.at("delta"), 1);

  std::string line = reader.expect();
  if (line.rfind("\\unigram", 0) != 0) throw DataError("expected \\unigram section");
  const auto unigram_fields = parse_fields(line, '\\');
  UnigramDistribution unigram;
  unigram.variant = parse_variant(unigram_fields.contains("variant")
                                      ? unigram_fields.at("variant")
                                      : std::string("uniform"));
  std::vector<std::string> tokens;
  for (line = reader.expect(); line.find('\t') != std::string::npos; line = reader.expect()) {
    const auto tab = line.find('\t');
    tokens.push_back(line.substr(0, tab));
    unigram.probs.push_back(parse_double(std::string_view(line).substr(tab + 1), reader.lineno()));
  }
  int bos_count = 0;
  while (static_cast<std::size_t>(bos_count) < tokens.size() &&
         tokens[bos_count] == bos_token(bos_count + 1)) {
    ++bos_count;
  }
  if (bos_count == 0 || tokens.size() < static_cast<std::size_t>(bos_count) + 2) {
    throw DataError("model unigram section does not start with the sentinels");
  }
  auto vocab = std::make_shared<const Vocabulary>(
      Vocabulary::from_regular_tokens(std::span(tokens).subspan(bos_count + 2), bos_count));
  if (vocab->token(vocab->eos()) != tokens[bos_count] ||
      vocab->token(vocab->unk()) != tokens[bos_count + 1]) {
    throw DataError("model unigram section has misplaced sentinels");
  }

  std::vector<ModelLevel> levels;
  while (line.rfind("\\level", 0) == 0) {
    const auto fields = parse_fields(line, '\\');
    ModelLevel level;
    level.history_length = static_cast<int>(parse_double(fields.at("history_length"),
                                                         reader.lineno()));
    if (fields.contains("discounts") && fields.at("discounts") != "-") {
      level.discounts = DiscountSet::parse(fields.at("discounts"));
    }
    if (fields.contains("floored")) {
      level.floored = static_cast<std::size_t>(parse_double(fields.at("floored"),
                                                            reader.lineno()));
    }
    if (reader.expect() != "\\histories") throw DataError("expected \\histories");
    for (line = reader.expect(); line.find('\t') != std::string::npos; line = reader.expect()) {
      const auto t1 = line.find('\t');
      const auto t2 = line.find('\t', t1 + 1);
      if (t2 == std::string::npos) {
        throw DataError(fmt::format("model line {}: expected history<TAB>gamma<TAB>total",
                                    reader.lineno()));
      }
      const std::string_view view(line);
      level.histories.emplace(
          parse_gram(view.substr(0, t1), *vocab, reader.lineno()),
          ModelLevel::History{parse_double(view.substr(t1 + 1, t2 - t1 - 1), reader.lineno()),
                              parse_double(view.substr(t2 + 1), reader.lineno())});
    }
    if (line != "\\ngrams") throw DataError("expected \\ngrams");
    for (line = reader.expect(); line.find('\t') != std::string::npos; line = reader.expect()) {
      const auto tab = line.find('\t');
      const std::string_view view(line);
      level.numerators.emplace(parse_gram(view.substr(0, tab), *vocab, reader.lineno()),
                               parse_double(view.substr(tab + 1), reader.lineno()));
    }
    levels.push_back(std::move(level));
  }
  if (line != "\\end") throw DataError(fmt::format("unexpected line '{}' in model dump", line));
  return SmoothedModel(method, order, std::move(vocab), std::move(levels), std::move(unigram),
                       delta);
}

}  // namespace ngs
