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

#ifndef NGS_DISCOUNT_HPP_
#define NGS_DISCOUNT_HPP_

#include <string>
#include <string_view>

#include "ngs/count_table.hpp"

namespace ngs {

// Margin keeping estimated discounts strictly below their bounds.
inline constexpr double kDiscountEpsilon = 1e-9;

// Discount parameters of one model level: a single D, or D1/D2/D3+ applied to
// counts of 1, 2 and at least 3.
class DiscountSet {
 public:
  // Throws ArgumentError unless 0 <= d < 1.
  static DiscountSet single(double d);
  // Throws ArgumentError unless 0 <= d1 < 1, 0 <= d2 < 2, 0 <= d3plus < 3.
  static DiscountSet triple(double d1, double d2, double d3plus);
  // "D" or "D1,D2,D3plus".
  static DiscountSet parse(std::string_view text);

  bool is_single() const { return single_; }
  double d1() const { return d1_; }
  double d2() const { return d2_; }
  double d3plus() const { return d3plus_; }

  // D(c) for an integer count: 0, D1, D2 or D3+ (all equal to D when single).
  double for_count(Count c) const;
  // Mass actually removed from a (pseudo-)count: min(D(value), value), where a
  // tiered set reads value as an integer count.
  double subtracted(double value) const;

  std::string to_string() const;

  friend bool operator==(const DiscountSet&, const DiscountSet&) = default;

 private:
  DiscountSet(bool single, double d1, double d2, double d3plus)
      : single_(single), d1_(d1), d2_(d2), d3plus_(d3plus) {}

  bool single_ = true;
  double d1_ = 0, d2_ = 0, d3plus_ = 0;
};

// D = n1 / (n1 + 2 n2), clamped to [0, 1 - eps]. Throws EstimationError when
// n1 = n2 = 0.
double estimate_discount_single(const CountHistogram& hist);

// D1 = 1 - 2D n2/n1, D2 = 2 - 3D n3/n2, D3+ = 3 - 4D n4/n3, each clamped to
// [0, bound - eps]. A formula whose denominator bucket is empty falls back:
// D2 to 2 D1, D3+ to D2 + (D2 - D1). Throws EstimationError when n1..n4 are all
// zero.
DiscountSet estimate_discounts_triple(const CountHistogram& hist);

}  // namespace ngs

#endif  // NGS_DISCOUNT_HPP_
