// Copyright 2026 The bibperf Authors.
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

#ifndef BIBPERF_ERROR_H_
#define BIBPERF_ERROR_H_

#include <stdexcept>
#include <string>

namespace bibperf {

// Base class for every error raised by the library. Messages are single-line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Malformed input: carries the 1-based line number and offending field.
class ParseError : public Error {
 public:
  ParseError(std::string source, long line, std::string field,
             const std::string& detail)
      : Error(source + ":" + std::to_string(line) + ": field '" + field +
              "': " + detail),
        source_(std::move(source)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& source() const { return source_; }
  long line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  long line_;
  std::string field_;
};

// Input that parses but violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bibperf

#endif  // BIBPERF_ERROR_H_
