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

#ifndef NGS_ERROR_HPP_
#define NGS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ngs {

// Base of every error raised for bad input or arguments. The CLI maps these
// to exit status 1; anything else escaping is treated as an internal fault.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed data files or corpora (bad UTF-8, unpadded sentences, bad TSV).
class DataError : public Error {
 public:
  using Error::Error;
};

class IngestionError : public DataError {
 public:
  IngestionError(const std::string& what, std::size_t byte_offset)
      : DataError(what + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// A count-of-counts histogram too sparse for the discount formulas.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// A model assigned zero probability to an evaluated event.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Violated internal invariant; maps to exit status 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ngs

#endif  // NGS_ERROR_HPP_
