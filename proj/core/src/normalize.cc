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

#include "bibperf/normalize.h"

#include <array>
#include <cctype>

namespace bibperf {
namespace {

// ASCII folding for U+00C0..U+017F. Empty entries are punctuation.
constexpr std::array<std::string_view, 0x180 - 0xC0> kLatinFold = {
    // U+00C0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00D0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "ss",
    // U+00E0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00F0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "y",
    // U+0100
    "a", "a", "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d",
    // U+0110
    "d", "d", "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g",
    // U+0120
    "g", "g", "g", "g", "h", "h", "h", "h", "i", "i", "i", "i", "i", "i", "i", "i",
    // U+0130
    "i", "i", "ij", "ij", "j", "j", "k", "k", "k", "l", "l", "l", "l", "l", "l", "l",
    // U+0140
    "l", "l", "l", "n", "n", "n", "n", "n", "n", "n", "n", "n", "o", "o", "o", "o",
    // U+0150
    "o", "o", "oe", "oe", "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s",
    // U+0160
    "s", "s", "t", "t", "t", "t", "t", "t", "u", "u", "u", "u", "u", "u", "u", "u",
    // U+0170
    "u", "u", "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s",
};

enum class Kind { kText, kHyphen, kSeparator, kDrop };

bool IsApostrophe(char32_t cp) {
  return cp == U'\'' || cp == U'`' || cp == 0x2018 || cp == 0x2019 ||
         cp == 0x02BC || cp == 0x00B4;
}

bool IsDash(char32_t cp) {
  return cp == U'-' || (cp >= 0x2010 && cp <= 0x2013);
}

// Decodes one UTF-8 sequence starting at text[*pos]; advances *pos. Returns
// U+FFFD for malformed input.
char32_t DecodeUtf8(std::string_view text, size_t* pos) {
  const auto byte = [&](size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(*pos);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++*pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++*pos;
    return 0xFFFD;
  }
  if (*pos + extra >= text.size()) {
    *pos = text.size();
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const unsigned char b = byte(*pos + i);
    if ((b & 0xC0) != 0x80) {
      *pos += i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *pos += extra + 1;
  return cp;
}

Kind Classify(char32_t cp, std::string_view raw, std::string* out) {
  if (cp < 0x80) {
    const char c = static_cast<char>(cp);
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out->push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      return Kind::kText;
    }
    if (IsApostrophe(cp)) return Kind::kDrop;
    if (IsDash(cp)) return Kind::kHyphen;
    return Kind::kSeparator;
  }
  if (IsApostrophe(cp)) return Kind::kDrop;
  if (IsDash(cp)) return Kind::kHyphen;
  // Combining diacritical marks (decomposed input).
  if (cp >= 0x0300 && cp <= 0x036F) return Kind::kDrop;
  if (cp >= 0xC0 && cp < 0x180) {
    const std::string_view folded = kLatinFold[cp - 0xC0];
    if (folded.empty()) return Kind::kSeparator;
    out->append(folded);
    return Kind::kText;
  }
  // Latin-1 punctuation, general punctuation, no-break space, U+FFFD.
  if (cp < 0xC0 || (cp >= 0x2000 && cp <= 0x206F) || cp == 0xFFFD ||
      cp == 0x3000) {
    return Kind::kSeparator;
  }
  out->append(raw);
  return Kind::kText;
}

}  // namespace

std::string_view FoldCodePoint(char32_t cp) {
  if (cp >= 0xC0 && cp < 0x180) return kLatinFold[cp - 0xC0];
  return {};
}

std::string NormalizeName(std::string_view text) {
  // Pass 1: fold letters, mark hyphens ('-') and separators (' ').
  std::string marked;
  marked.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t start = pos;
    const char32_t cp = DecodeUtf8(text, &pos);
    switch (Classify(cp, text.substr(start, pos - start), &marked)) {
      case Kind::kText:
      case Kind::kDrop:
        break;
      case Kind::kHyphen:
        marked.push_back('-');
        break;
      case Kind::kSeparator:
        marked.push_back(' ');
        break;
    }
  }

  // Pass 2: a hyphen survives only between two text characters; whitespace
  // is collapsed and trimmed.
  std::string out;
  out.reserve(marked.size());
  const auto is_text = [](char c) { return c != ' ' && c != '-'; };
  bool pending_space = false;
  for (size_t i = 0; i < marked.size(); ++i) {
    char c = marked[i];
    if (c == '-') {
      const bool keep = i > 0 && i + 1 < marked.size() &&
                        is_text(marked[i - 1]) && is_text(marked[i + 1]);
      if (!keep) c = ' ';
    }
    if (c == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::string NormalizeEmail(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string out(text.substr(begin, end - begin));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsValidOrcid(std::string_view orcid) {
  if (orcid.size() != 19) return false;
  for (size_t i = 0; i < orcid.size(); ++i) {
    const char c = orcid[i];
    if (i % 5 == 4) {
      if (c != '-') return false;
    } else if (i == 18) {
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != 'X') return false;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

void SplitFullName(std::string_view full_name, std::string* last,
                   std::string* first) {
  const size_t comma = full_name.find(',');
  if (comma != std::string_view::npos) {
    *last = std::string(full_name.substr(0, comma));
    *first = std::string(full_name.substr(comma + 1));
    return;
  }
  size_t end = full_name.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(full_name[end - 1]))) --end;
  const size_t space = full_name.substr(0, end).find_last_of(" \t");
  if (space == std::string_view::npos) {
    *last = std::string(full_name.substr(0, end));
    first->clear();
    return;
  }
  *last = std::string(full_name.substr(space + 1, end - space - 1));
  *first = std::string(full_name.substr(0, space));
}

}  // namespace bibperf
