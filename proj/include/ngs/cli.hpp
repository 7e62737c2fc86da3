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

#ifndef NGS_CLI_HPP_
#define NGS_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>

namespace ngs::cli {

// Runs one subcommand (args exclude the program name). Returns 0 on success,
// 1 for argument and data errors, 2 for internal invariant violations.
// Failures print one "error: <reason>" line to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Applies NGS_LOG (quiet, info or debug) to the diagnostic logger.
void configure_logging();

}  // namespace ngs::cli

#endif  // NGS_CLI_HPP_
