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

#include "ngs/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

bool table_mentions(const CountTable& table, WordId id) {
  if (table.final_total(id) > 0) return true;
  for (const auto& [h, total] : table.context_totals()) {
    for (WordId x : h.ids()) {
      if (x == id) return true;
    }
  }
  return false;
}

std::vector<WordId> ordered_ids(const Vocabulary& vocab, bool include_unk) {
  std::vector<WordId> ids;
  for (int k = 1; k <= vocab.bos_count(); ++k) ids.push_back(vocab.bos(k));
  std::vector<WordId> regular;
  for (WordId w = vocab.unk() + 1; w < vocab.size(); ++w) regular.push_back(w);
  std::sort(regular.begin(), regular.end(),
            [&vocab](WordId a, WordId b) { return vocab.token(a) < vocab.token(b); });
  ids.insert(ids.end(), regular.begin(), regular.end());
  if (include_unk) ids.push_back(vocab.unk());
  ids.push_back(vocab.eos());
  return ids;
}

JointCountMatrix empty_matrix(const Vocabulary& vocab, std::vector<WordId> ids) {
  JointCountMatrix m;
  m.ids = std::move(ids);
  for (WordId id : m.ids) m.labels.push_back(vocab.token(id));
  const std::size_t n = m.ids.size();
  m.cells.assign(n, std::vector<double>(n, 0.0));
  m.row_totals.assign(n, 0.0);
  m.column_totals.assign(n, 0.0);
  return m;
}

void finish_totals(JointCountMatrix& m) {
  const std::size_t n = m.size();
  m.grand_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m.row_totals[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) m.row_totals[i] += m.cells[i][j];
    m.grand_total += m.row_totals[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    m.column_totals[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) m.column_totals[j] += m.cells[i][j];
  }
}

void require_bigram(const CountTable& table, const Vocabulary& vocab) {
  if (table.order() != 2) throw ArgumentError("joint count matrices need an order-2 table");
  if (table.id_bound() > vocab.size()) {
    throw ArgumentError("count table uses ids outside the vocabulary");
  }
}

MarginalReport compare(const std::vector<WordId>& ids, const std::vector<std::string>& labels,
                       const std::vector<double>& smoothed, const CountTable& original,
                       double tolerance) {
  for (const auto& [w, c] : original.final_totals()) {
    if (c > 0 && std::find(ids.begin(), ids.end(), w) == ids.end()) {
      throw ArgumentError(
          fmt::format("original counts predict word id {}, absent from the matrix", w));
    }
  }
  MarginalReport report;
  report.tolerance = tolerance;
  for (std::size_t j = 0; j < ids.size(); ++j) {
    MarginalEntry e;
    e.token = labels[j];
    e.original = static_cast<double>(original.final_total(ids[j]));
    e.smoothed = smoothed[j];
    e.abs_dev = std::abs(e.smoothed - e.original);
    e.rel_dev = e.original > 0.0 ? e.abs_dev / e.original
                : e.abs_dev == 0.0 ? 0.0
                                   : std::numeric_limits<double>::infinity();
    if (j == 0 || e.abs_dev > report.max_abs_deviation) {
      report.max_abs_deviation = e.abs_dev;
      report.worst_token = e.token;
    }
    report.max_rel_deviation = std::max(report.max_rel_deviation, e.rel_dev);
    if (e.abs_dev > tolerance * std::max(1.0, e.original)) report.preserved = false;
    report.entries.push_back(std::move(e));
  }
  return report;
}

double round_half_up(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::floor(v * scale + 0.5) / scale;
  return r == 0.0 ? 0.0 : r;  // no "-0.00"
}

}  // namespace

JointCountMatrix joint_counts(const CountTable& table, const Vocabulary& vocab) {
  require_bigram(table, vocab);
  JointCountMatrix m = empty_matrix(vocab, ordered_ids(vocab, table_mentions(table, vocab.unk())));
  std::unordered_map<WordId, std::size_t> pos;
  for (std::size_t i = 0; i < m.ids.size(); ++i) pos[m.ids[i]] = i;
  for (const auto& e : table.entries()) {
    m.cells[pos.at(e.gram[0])][pos.at(e.gram[1])] = static_cast<double>(e.count);
  }
  finish_totals(m);
  return m;
}

JointCountMatrix smoothed_joint_counts(const SmoothedModel& model, const CountTable& table) {
  if (model.order() != 2) throw ArgumentError("joint count matrices need an order-2 model");
  const Vocabulary& vocab = model.vocab();
  require_bigram(table, vocab);
  bool unk = table_mentions(table, vocab.unk());
  for (const auto& [h, total] : table.context_totals()) {
    if (!unk && total > 0 && model.prob(h, vocab.unk()) > 0.0) unk = true;
  }
  JointCountMatrix m = empty_matrix(vocab, ordered_ids(vocab, unk));
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double c = static_cast<double>(table.context_total(NGram{m.ids[i]}));
    if (c == 0.0) continue;
    const WordId history[] = {m.ids[i]};
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (vocab.is_bos(m.ids[j])) continue;
      m.cells[i][j] = model.prob(history, m.ids[j]) * c;
    }
  }
  finish_totals(m);
  return m;
}

MarginalReport marginal_report(const JointCountMatrix& matrix, const CountTable& original,
                               double tolerance) {
  if (matrix.column_totals.size() != matrix.ids.size()) {
    throw ArgumentError("matrix totals do not match its labels");
  }
  return compare(matrix.ids, matrix.labels, matrix.column_totals, original, tolerance);
}

MarginalReport highest_level_marginals(const SmoothedModel& model, const CountTable& table,
                                       double tolerance) {
  const Vocabulary& vocab = model.vocab();
  if (table.order() != model.order()) {
    throw ArgumentError("table and model orders differ");
  }
  if (table.id_bound() > vocab.size()) {
    throw ArgumentError("count table uses ids outside the vocabulary");
  }
  // Push each history's count c(h) down the levels: a level keeps
  // c * numerator / total for its n-grams and hands c * gamma to the suffix
  // history one level down; whatever reaches the bottom is spread by the
  // unigram distribution. Linear in the model size.
  std::vector<double> expected(vocab.size(), 0.0);
  std::unordered_map<NGram, double, NGramHash> mass;
  for (const auto& [h, c] : table.context_totals()) mass[h] += static_cast<double>(c);
  for (const ModelLevel& level : model.levels()) {
    for (const auto& [gram, num] : level.numerators) {
      auto m = mass.find(gram.history());
      if (m == mass.end()) continue;
      expected[gram.back()] += m->second * num / level.histories.at(gram.history()).total;
    }
    std::unordered_map<NGram, double, NGramHash> lower;
    for (const auto& [h, m] : mass) {
      auto it = level.histories.find(h);
      const double passed = it == level.histories.end() ? m : m * it->second.gamma;
      lower[h.empty() ? h : h.drop_front()] += passed;
    }
    mass = std::move(lower);
  }
  double remaining = 0.0;
  for (const auto& [h, m] : mass) remaining += m;
  for (WordId w : vocab.predictable()) expected[w] += remaining * model.unigram()[w];

  const bool unk = table_mentions(table, vocab.unk()) || expected[vocab.unk()] > 0.0;
  const std::vector<WordId> ids = ordered_ids(vocab, unk);
  std::vector<std::string> labels;
  std::vector<double> smoothed;
  for (WordId id : ids) {
    labels.push_back(vocab.token(id));
    smoothed.push_back(expected[id]);
  }
  return compare(ids, labels, smoothed, table, tolerance);
}

void MarginalReport::write_tsv(std::ostream& out) const {
  out << "token\toriginal_marginal\tsmoothed_marginal\tabs_dev\trel_dev\n";
  for (const auto& e : entries) {
    out << fmt::format("{}\t{}\t{}\t{}\t{}\n", e.token, e.original, e.smoothed, e.abs_dev,
                       e.rel_dev);
  }
  out << fmt::format("max_abs_dev={} preserved={}\n", max_abs_deviation,
                     preserved ? "true" : "false");
}

std::string render_table(const JointCountMatrix& matrix, int decimals) {
  if (decimals < 0) throw ArgumentError("decimals must be >= 0");
  const std::size_t n = matrix.size();
  auto num = [decimals](double v) {
    return fmt::format("{:.{}f}", round_half_up(v, decimals), decimals);
  };
  // Column 0 holds row labels; columns 1..n the cells; n+1 the row totals.
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"c(x, y)"};
  header.insert(header.end(), matrix.labels.begin(), matrix.labels.end());
  header.emplace_back("total");
  grid.push_back(std::move(header));
  if (n > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> row{matrix.labels[i]};
      for (std::size_t j = 0; j < n; ++j) row.push_back(num(matrix.cells[i][j]));
      row.push_back(num(matrix.row_totals[i]));
      grid.push_back(std::move(row));
    }
    std::vector<std::string> sums{"total"};
    for (std::size_t j = 0; j < n; ++j) sums.push_back(num(matrix.column_totals[j]));
    sums.push_back(num(matrix.grand_total));
    grid.push_back(std::move(sums));
  }
  std::vector<std::size_t> width(n + 2, 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out += fmt::format("{:<{}}", row[c], width[c]);
      } else {
        out += fmt::format("  {:>{}}", row[c], width[c]);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace ngs
