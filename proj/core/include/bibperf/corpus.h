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

#ifndef BIBPERF_CORPUS_H_
#define BIBPERF_CORPUS_H_

#include <algorithm>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bibperf {

enum class DocType { kArticle, kReview, kLetter, kProceedings, kOther };
enum class SourceIndex { kCore, kEsci, kOther };

std::string_view ToString(DocType type);
std::string_view ToString(SourceIndex index);
std::optional<DocType> ParseDocType(std::string_view text);
std::optional<SourceIndex> ParseSourceIndex(std::string_view text);

using DocTypeSet = std::set<DocType>;

// Articles, reviews, letters and proceedings.
DocTypeSet DefaultDocTypes();

// Inclusive range of calendar years.
struct YearRange {
  int first = 2015;
  int last = 2019;

  bool Contains(int year) const { return year >= first && year <= last; }
  int Length() const { return last - first + 1; }
  bool operator==(const YearRange&) const = default;
};

// Parses "2015:2019" (a single year "2017" is also accepted).
YearRange ParseYearRange(std::string_view text);

// One name on a byline. Name and organization fields hold the normalized form
// (see NormalizeName); raw_full_name and affiliation_raw are kept verbatim.
struct AuthorMention {
  std::string raw_full_name;
  std::string last_name;
  std::string first_name;
  std::optional<std::string> email;
  std::optional<std::string> orcid;
  std::optional<std::string> researcher_id;
  std::string affiliation_raw;
  std::optional<std::string> organization;
  std::optional<std::string> city;
  std::optional<std::string> country;

  bool operator==(const AuthorMention&) const = default;
};

// Builds a mention from raw strings, applying the normalization rules. When
// last/first are empty they are split out of `full_name`.
AuthorMention MakeMention(std::string full_name, std::string_view last,
                          std::string_view first);

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  DocType doc_type = DocType::kArticle;
  SourceIndex source_index = SourceIndex::kCore;
  std::vector<std::string> subject_categories;
  std::string journal;
  // Byline order: position == index.
  std::vector<AuthorMention> mentions;
  long long citation_count = 0;
  std::string census_date;

  bool operator==(const PublicationRecord&) const = default;
};

struct LoadOptions {
  YearRange window;
  DocTypeSet doc_filter = DefaultDocTypes();
  // Number of years, ending at window.last, of production retained for
  // prevailing-SC assignment (19 -> 2001..2019 for a 2015:2019 window).
  int sc_lookback = 19;

  // First publication year retained by the loader. Later years are kept up to
  // the census year so recency filters can see post-window output.
  int FirstRetainedYear() const {
    return std::min(window.first, window.last - sc_lookback + 1);
  }
};

// Parses publications.jsonl content. Records are validated, normalized,
// filtered (doc type, core index only, retained years) and sorted by pub_id.
// Malformed lines raise ParseError naming the line and field; duplicate
// pub_ids raise ValidationError. Unknown fields append to *warnings.
std::vector<PublicationRecord> ParsePublications(
    std::istream& in, const std::string& source, const LoadOptions& options,
    std::vector<std::string>* warnings = nullptr);

std::vector<PublicationRecord> LoadPublications(
    const std::filesystem::path& path, const LoadOptions& options,
    std::vector<std::string>* warnings = nullptr);

// One JSON object per line, fields in a fixed order. Parsing the output with
// a filter that admits every record yields an identical corpus.
void WritePublications(std::ostream& out,
                       const std::vector<PublicationRecord>& pubs);

// Immutable, pub_id-indexed view over loaded publications.
class Corpus {
 public:
  Corpus() = default;
  // Sorts by pub_id; throws ValidationError on duplicate ids.
  explicit Corpus(std::vector<PublicationRecord> pubs);

  const std::vector<PublicationRecord>& publications() const { return pubs_; }
  size_t size() const { return pubs_.size(); }

  const PublicationRecord* Find(std::string_view pub_id) const;
  // Throws Error when the id is unknown.
  const PublicationRecord& Get(std::string_view pub_id) const;

 private:
  std::vector<PublicationRecord> pubs_;
  std::unordered_map<std::string, size_t> index_;
};

// Ground-truth staff member of the supervised path.
struct RosterEntry {
  std::string person_id;
  std::string full_name;
  std::string university_id;
  std::string field_code;
  std::optional<std::string> sc_hint;
  std::set<int> active_years;
  std::vector<std::string> linked_pub_ids;

  bool operator==(const RosterEntry&) const = default;
};

// Columns: person_id,full_name,university_id,field_code,sc_hint,
// active_years,linked_pub_ids (list cells are ';'-separated).
std::vector<RosterEntry> ParseRoster(std::istream& in,
                                     const std::string& source,
                                     const YearRange& window);
std::vector<RosterEntry> LoadRoster(const std::filesystem::path& path,
                                    const YearRange& window);
void WriteRoster(std::ostream& out, const std::vector<RosterEntry>& roster);

struct University {
  std::string university_id;
  std::string official_name;
  std::vector<std::string> email_domains;
  std::vector<std::string> organization_variants;

  bool operator==(const University&) const = default;
};

class UniversityRegistry {
 public:
  UniversityRegistry() = default;
  // Normalizes and de-duplicates variants and domains, then enforces that no
  // variant or domain belongs to two universities (ValidationError naming
  // both).
  explicit UniversityRegistry(std::vector<University> universities);

  const std::vector<University>& universities() const { return universities_; }
  const University* Find(std::string_view university_id) const;

  // university_id whose variant list holds `organization` (normalized form).
  std::optional<std::string> MatchOrganization(
      std::string_view organization) const;
  // university_id whose domain is a suffix of `email` after '@' or '.'. The
  // longest matching domain wins.
  std::optional<std::string> MatchEmail(std::string_view email) const;

 private:
  std::vector<University> universities_;
  std::unordered_map<std::string, std::string> by_variant_;
  std::unordered_map<std::string, std::string> by_domain_;
};

// Columns: university_id,official_name,email_domains,organization_variants.
UniversityRegistry ParseRegistry(std::istream& in, const std::string& source);
UniversityRegistry LoadRegistry(const std::filesystem::path& path);
void WriteRegistry(std::ostream& out, const UniversityRegistry& registry);

struct SubjectCategory {
  std::string sc_id;
  std::string name;
  std::string area_id;
  bool excluded_area = false;
  bool is_multidisciplinary = false;

  bool operator==(const SubjectCategory&) const = default;
};

class SCScheme {
 public:
  SCScheme() = default;
  // Throws ValidationError on duplicate sc_id or empty area.
  explicit SCScheme(std::vector<SubjectCategory> categories);

  const std::vector<SubjectCategory>& categories() const { return categories_; }
  const SubjectCategory* Find(std::string_view sc_id) const;
  // Throws Error for an unknown SC.
  const SubjectCategory& Get(std::string_view sc_id) const;

 private:
  std::vector<SubjectCategory> categories_;
  std::unordered_map<std::string, size_t> index_;
};

// Columns: sc_id,name,area_id,excluded_area,is_multidisciplinary (0/1).
SCScheme ParseScheme(std::istream& in, const std::string& source);
SCScheme LoadScheme(const std::filesystem::path& path);
void WriteScheme(std::ostream& out, const SCScheme& scheme);

// National field code -> SC incidence, used as the supervised fallback when a
// researcher's production does not single out one SC.
class FieldIncidence {
 public:
  void Add(const std::string& field_code, const std::string& sc_id,
           double incidence);

  double Incidence(std::string_view field_code, std::string_view sc_id) const;
  // SC with the highest incidence for the field; ties go to the smaller sc_id.
  std::optional<std::string> Top(std::string_view field_code) const;
  const std::map<std::string, std::map<std::string, double>>& rows() const {
    return rows_;
  }

 private:
  std::map<std::string, std::map<std::string, double>> rows_;
};

// Columns: field_code,sc_id,incidence.
FieldIncidence ParseIncidence(std::istream& in, const std::string& source);
FieldIncidence LoadIncidence(const std::filesystem::path& path);
void WriteIncidence(std::ostream& out, const FieldIncidence& incidence);

}  // namespace bibperf

#endif  // BIBPERF_CORPUS_H_
