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

#include "ngs/discount.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "ngs/error.hpp"

namespace ngs {
namespace {

void check_range(double d, double bound, const char* name) {
  if (!std::isfinite(d) || d < 0.0 || d >= bound) {
    throw ArgumentError(fmt::format("discount {}={} outside [0, {})", name, d, bound));
  }
}

double clamp_to(double d, double bound) {
  return std::clamp(d, 0.0, bound - kDiscountEpsilon);
}

}  // namespace

DiscountSet DiscountSet::single(double d) {
  check_range(d, 1.0, "D");
  return DiscountSet(true, d, d, d);
}

DiscountSet DiscountSet::triple(double d1, double d2, double d3plus) {
  check_range(d1, 1.0, "D1");
  check_range(d2, 2.0, "D2");
  check_range(d3plus, 3.0, "D3+");
  return DiscountSet(false, d1, d2, d3plus);
}

DiscountSet DiscountSet::parse(std::string_view text) {
  std::vector<double> values;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string_view::npos) j = text.size();
    const auto field = text.substr(i, j - i);
    double v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw ArgumentError(fmt::format("bad discount list '{}'", text));
    }
    values.push_back(v);
    i = j + 1;
  }
  if (values.size() == 1) return single(values[0]);
  if (values.size() == 3) return triple(values[0], values[1], values[2]);
  throw ArgumentError(fmt::format("expected 1 or 3 discounts, got '{}'", text));
}

double DiscountSet::for_count(Count c) const {
  if (c == 0) return 0.0;
  if (c == 1) return d1_;
  if (c == 2) return d2_;
  return d3plus_;
}

double DiscountSet::subtracted(double value) const {
  if (value <= 0.0) return 0.0;
  const double d = single_ ? d1_ : for_count(static_cast<Count>(std::llround(value)));
  return std::min(d, value);
}

std::string DiscountSet::to_string() const {
  if (single_) return fmt::format("{}", d1_);
  return fmt::format("{},{},{}", d1_, d2_, d3plus_);
}

double estimate_discount_single(const CountHistogram& hist) {
  const double n1 = static_cast<double>(hist[1]);
  const double n2 = static_cast<double>(hist[2]);
  if (n1 + 2.0 * n2 <= 0.0) {
    throw EstimationError("cannot estimate a discount: n1 = n2 = 0");
  }
  return clamp_to(n1 / (n1 + 2.0 * n2), 1.0);
}

DiscountSet estimate_discounts_triple(const CountHistogram& hist) {
  const double n1 = static_cast<double>(hist[1]);
  const double n2 = static_cast<double>(hist[2]);
  const double n3 = static_cast<double>(hist[3]);
  const double n4 = static_cast<double>(hist[4]);
  if (n1 + n2 + n3 + n4 <= 0.0) {
    throw EstimationError("cannot estimate discounts: n1..n4 are all zero");
  }
  const double d = (n1 + 2.0 * n2 > 0.0) ? clamp_to(n1 / (n1 + 2.0 * n2), 1.0) : 0.0;
  const double d1 = n1 > 0.0 ? clamp_to(1.0 - 2.0 * d * n2 / n1, 1.0) : d;
  const double d2 = n2 > 0.0 ? clamp_to(2.0 - 3.0 * d * n3 / n2, 2.0) : clamp_to(2.0 * d1, 2.0);
  const double d3 = n3 > 0.0 ? clamp_to(3.0 - 4.0 * d * n4 / n3, 3.0)
                             : clamp_to(d2 + (d2 - d1), 3.0);
  return DiscountSet::triple(d1, d2, d3);
}

}  // namespace ngs
