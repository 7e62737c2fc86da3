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

// Marginal audit: pseudo-count matrices p(y|x) * c(x) and the comparison of
// their column sums with the original counts c(. y).

#ifndef NGS_AUDIT_HPP_
#define NGS_AUDIT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "ngs/count_table.hpp"
#include "ngs/model.hpp"

namespace ngs {

inline constexpr double kDefaultMarginalTolerance = 1e-6;

// Rows are histories x, columns predicted words y, both over the same label
// list: BOS sentinels, regular tokens in byte order, <unk> (only when it
// carries counts or smoothed mass), then </s>.
struct JointCountMatrix {
  std::vector<std::string> labels;
  std::vector<WordId> ids;
  std::vector<std::vector<double>> cells;
  std::vector<double> row_totals;
  std::vector<double> column_totals;
  double grand_total = 0.0;

  std::size_t size() const { return labels.size(); }
};

// The unsmoothed count matrix c(x, y) of a bigram table.
JointCountMatrix joint_counts(const CountTable& table, const Vocabulary& vocab);

// cell(x, y) = p(y | x) * c(x), with c(x) the row total of the training
// table. Throws ArgumentError unless both model and table are order 2.
JointCountMatrix smoothed_joint_counts(const SmoothedModel& model, const CountTable& table);

struct MarginalEntry {
  std::string token;
  double original = 0.0;
  double smoothed = 0.0;
  double abs_dev = 0.0;
  // abs_dev / original; 0 when both are 0, infinite when only original is 0.
  double rel_dev = 0.0;
};

struct MarginalReport {
  std::vector<MarginalEntry> entries;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
  std::string worst_token;
  double tolerance = kDefaultMarginalTolerance;
  // Every column satisfies abs_dev <= tolerance * max(1, original).
  bool preserved = true;

  // Columns token, original_marginal, smoothed_marginal, abs_dev, rel_dev;
  // final line "max_abs_dev=<v> preserved=<true|false>".
  void write_tsv(std::ostream& out) const;
};

// Compares the matrix column sums with c(. y) from the original table.
// Throws ArgumentError when the matrix labels do not belong to the table.
MarginalReport marginal_report(const JointCountMatrix& matrix, const CountTable& original,
                               double tolerance = kDefaultMarginalTolerance);

// Highest-level marginal check for a model of any order: for each
// predictable w, sum over observed histories h of p(w | h) c(h) against
// c(. w).
MarginalReport highest_level_marginals(const SmoothedModel& model, const CountTable& table,
                                       double tolerance = kDefaultMarginalTolerance);

// Fixed-width table in the layout of a joint count matrix: one row per
// history with its total, then a final row of column sums. Values are
// rounded half-up to the given number of decimals.
std::string render_table(const JointCountMatrix& matrix, int decimals);

}  // namespace ngs

#endif  // NGS_AUDIT_HPP_
