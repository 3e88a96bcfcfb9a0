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

#ifndef BIBPERF_NORMALIZE_H_
#define BIBPERF_NORMALIZE_H_

#include <string>
#include <string_view>

namespace bibperf {

// Canonical form used for names, organization variants and block keys:
// lowercase, Latin diacritics folded to ASCII, apostrophes dropped, hyphens
// kept only between two alphanumerics, any other punctuation turned into a
// separator, whitespace collapsed and trimmed. Idempotent.
std::string NormalizeName(std::string_view text);

// Lowercase + trim; used for e-mail addresses, domains and journal titles.
std::string NormalizeEmail(std::string_view text);

// Folds a single Unicode code point to its ASCII base letters, or returns an
// empty view when the code point has no folding.
std::string_view FoldCodePoint(char32_t cp);

// True when `orcid` has the 0000-0000-0000-000X shape.
bool IsValidOrcid(std::string_view orcid);

// Splits "last, first" into its two halves. Without a comma the last
// whitespace-separated token is taken as the surname.
void SplitFullName(std::string_view full_name, std::string* last,
                   std::string* first);

}  // namespace bibperf

#endif  // BIBPERF_NORMALIZE_H_
