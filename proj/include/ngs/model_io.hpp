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

// Model dump format (UTF-8, tab-separated, doubles in shortest round-trip
// form):
//
//   #method=<name> #order=<n> #discounts=<level3>;<level2>[ #delta=<k>]
//   \unigram variant=<uniform|empirical|continuation|weighted>
//   <token>\t<probability>            one line per vocabulary id, in id order
//   \level history_length=<k> discounts=<list|-> floored=<count>
//   \histories
//   <history tokens>\t<gamma>\t<total>
//   \ngrams
//   <n-gram tokens>\t<discounted numerator>
//   ... further \level blocks, highest order first ...
//   \end
//
// A level's probability is numerator / total + gamma * (next level), with
// the unigram section as the last level. Reading a dump reproduces every
// probability of the written model exactly.

#ifndef NGS_MODEL_IO_HPP_
#define NGS_MODEL_IO_HPP_

#include <iosfwd>

#include "ngs/model.hpp"

namespace ngs {

void write_model(std::ostream& out, const SmoothedModel& model);
SmoothedModel read_model(std::istream& in);

}  // namespace ngs

#endif  // NGS_MODEL_IO_HPP_
