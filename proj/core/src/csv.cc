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

#include "bibperf/csv.h"

#include <cctype>
#include <charconv>
#include <exception>

#include "bibperf/error.h"

namespace bibperf {

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

CsvReader::CsvReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {
  if (!ReadRecord(&header_)) {
    throw ParseError(source_, 1, "<header>", "empty file");
  }
  for (auto& name : header_) name = Trim(name);
}

bool CsvReader::ReadRecord(std::vector<std::string>* fields) {
  fields->clear();
  std::string line;
  // Skip blank lines between records.
  do {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  } while (line.empty());
  record_line_ = line_;

  std::string field;
  bool quoted = false;
  size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (quoted) {
        // Quoted field continues on the next physical line.
        if (!std::getline(in_, line)) {
          throw ParseError(source_, record_line_, "<record>",
                           "unterminated quoted field");
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        field.push_back('\n');
        i = 0;
        continue;
      }
      fields->push_back(std::move(field));
      return true;
    }
    const char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields->push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
}

bool CsvReader::Next(std::map<std::string, std::string>* row) {
  std::vector<std::string> fields;
  if (!ReadRecord(&fields)) return false;
  if (fields.size() != header_.size()) {
    throw ParseError(source_, record_line_, "<record>",
                     "expected " + std::to_string(header_.size()) +
                         " columns, found " + std::to_string(fields.size()));
  }
  row->clear();
  for (size_t i = 0; i < fields.size(); ++i) {
    (*row)[header_[i]] = std::move(fields[i]);
  }
  return true;
}

const std::string& CsvReader::Require(
    const std::map<std::string, std::string>& row,
    const std::string& field) const {
  const auto it = row.find(field);
  if (it == row.end()) {
    throw ParseError(source_, record_line_, field, "missing column");
  }
  return it->second;
}

long long CsvReader::RequireInt(const std::map<std::string, std::string>& row,
                                const std::string& field) const {
  const std::string& text = Require(row, field);
  std::string trimmed = Trim(text);
  // from_chars rejects an explicit plus sign.
  if (trimmed.size() > 1 && trimmed[0] == '+' && trimmed[1] != '-') trimmed.erase(0, 1);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (trimmed.empty() || ec != std::errc() || ptr != trimmed.data() + trimmed.size()) {
    throw ParseError(source_, record_line_, field,
                     "expected an integer, got '" + text + "'");
  }
  return value;
}

double CsvReader::RequireDouble(const std::map<std::string, std::string>& row,
                                const std::string& field) const {
  const std::string& text = Require(row, field);
  const std::string trimmed = Trim(text);
  double value = 0.0;
  size_t used = 0;
  try {
    value = std::stod(trimmed, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (trimmed.empty() || used != trimmed.size()) {
    throw ParseError(source_, record_line_, field,
                     "expected a number, got '" + text + "'");
  }
  return value;
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

std::vector<std::string> SplitList(std::string_view cell, char sep) {
  std::vector<std::string> items;
  if (Trim(cell).empty()) return items;
  size_t start = 0;
  while (true) {
    const size_t pos = cell.find(sep, start);
    items.push_back(Trim(cell.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return items;
}

std::string JoinList(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += items[i];
  }
  return out;
}

std::map<std::string, std::string> ParseKeyValue(std::istream& in,
                                                 const std::string& source) {
  std::map<std::string, std::string> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line_no, trimmed, "expected 'key = value'");
    }
    std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw ParseError(source, line_no, "<key>", "empty key");
    values[key] = value;
  }
  return values;
}

}  // namespace bibperf
