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

#ifndef NGS_SRC_UNICODE_HPP_
#define NGS_SRC_UNICODE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace ngs::internal {

// Validates UTF-8 and lowercases Latin, Greek and Cyrillic letters.
// Locale-independent. Throws IngestionError with the absolute byte offset
// (base_offset + position in text) of the first invalid sequence.
std::string lowercase_utf8(std::string_view text, std::size_t base_offset);

}  // namespace ngs::internal

#endif  // NGS_SRC_UNICODE_HPP_
