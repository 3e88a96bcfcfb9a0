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

#ifndef BIBPERF_CSV_H_
#define BIBPERF_CSV_H_

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bibperf {

// RFC 4180 reader: comma separated, double-quote escaping, quoted fields may
// span lines. The first record is the header.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source);

  const std::vector<std::string>& header() const { return header_; }

  // Reads the next record into *row (keyed by header name). Returns false at
  // end of input. Throws ParseError on a column-count mismatch.
  bool Next(std::map<std::string, std::string>* row);

  // Line on which the most recently returned record started.
  long line() const { return record_line_; }
  const std::string& source() const { return source_; }

  // Index lookups that throw ParseError naming the field when it is missing.
  const std::string& Require(const std::map<std::string, std::string>& row,
                             const std::string& field) const;
  long long RequireInt(const std::map<std::string, std::string>& row,
                       const std::string& field) const;
  double RequireDouble(const std::map<std::string, std::string>& row,
                       const std::string& field) const;

 private:
  bool ReadRecord(std::vector<std::string>* fields);

  std::istream& in_;
  std::string source_;
  std::vector<std::string> header_;
  long line_ = 0;
  long record_line_ = 0;
};

// Writes one CSV record, quoting fields that need it.
// Throws Error naming the path when it cannot be opened.
std::ifstream OpenForRead(const std::filesystem::path& path);

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

// Splits a ';'-separated list cell; empty cell gives an empty list. Items are
// trimmed.
std::vector<std::string> SplitList(std::string_view cell, char sep = ';');
std::string JoinList(const std::vector<std::string>& items, char sep = ';');

// Plain-text "key = value" files. '#' starts a comment; blank lines ignored;
// a key given twice keeps the last value.
std::map<std::string, std::string> ParseKeyValue(std::istream& in,
                                                 const std::string& source);

std::string Trim(std::string_view text);

}  // namespace bibperf

#endif  // BIBPERF_CSV_H_
