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

#include "bibperf/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "bibperf/csv.h"
#include "bibperf/error.h"
#include "bibperf/normalize.h"
#include "json.hpp"

namespace bibperf {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::optional<std::string> NonEmpty(std::string value) {
  if (value.empty()) return std::nullopt;
  return value;
}

class LineContext {
 public:
  LineContext(const std::string& source, long line)
      : source_(source), line_(line) {}

  [[noreturn]] void Fail(const std::string& field,
                         const std::string& detail) const {
    throw ParseError(source_, line_, field, detail);
  }

  // Field paths are `prefix + field`, built only when reporting a failure.
  const json& Require(const json& obj, const std::string& field,
                      std::string_view prefix = {}) const {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) Fail(std::string(prefix) + field, "missing");
    return *it;
  }

  std::string String(const json& obj, const std::string& field,
                     std::string_view prefix = {}) const {
    const json& v = Require(obj, field, prefix);
    if (!v.is_string()) Fail(std::string(prefix) + field, "expected a string");
    return v.get<std::string>();
  }

  std::string OptionalString(const json& obj, const std::string& field,
                             std::string_view prefix = {}) const {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) Fail(std::string(prefix) + field, "expected a string");
    return it->get<std::string>();
  }

  long long Integer(const json& obj, const std::string& field,
                    std::string_view prefix = {}) const {
    const json& v = Require(obj, field, prefix);
    if (!v.is_number_integer()) Fail(std::string(prefix) + field, "expected an integer");
    return v.get<long long>();
  }

 private:
  const std::string& source_;
  long line_;
};

const std::set<std::string>& KnownPublicationFields() {
  static const std::set<std::string> kFields = {
      "pub_id",         "year",       "doc_type", "source_index",
      "subject_categories", "journal", "authors",  "citation_count",
      "census_date"};
  return kFields;
}

const std::set<std::string>& KnownAuthorFields() {
  static const std::set<std::string> kFields = {
      "full_name", "last_name",   "first_name", "email",
      "orcid",     "researcher_id", "affiliation", "organization",
      "city",      "country"};
  return kFields;
}

int CensusYear(const std::string& census_date, const LineContext& ctx) {
  int year = 0;
  const char* begin = census_date.data();
  const char* end = begin + std::min<size_t>(census_date.size(), 4);
  const auto [ptr, ec] = std::from_chars(begin, end, year);
  if (ec != std::errc() || ptr != end || census_date.size() < 4 ||
      (census_date.size() > 4 && census_date[4] != '-')) {
    ctx.Fail("census_date", "expected an ISO date, got '" + census_date + "'");
  }
  return year;
}

AuthorMention ParseAuthor(const json& obj, size_t position,
                          const LineContext& ctx,
                          std::set<std::string>* unknown) {
  const std::string prefix = "authors[" + std::to_string(position) + "].";
  if (!obj.is_object()) ctx.Fail(prefix.substr(0, prefix.size() - 1), "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!KnownAuthorFields().contains(key)) unknown->insert("authors." + key);
  }
  AuthorMention m = MakeMention(ctx.String(obj, "full_name", prefix),
                                ctx.OptionalString(obj, "last_name", prefix),
                                ctx.OptionalString(obj, "first_name", prefix));
  if (m.last_name.empty()) ctx.Fail(prefix + "last_name", "empty after normalization");
  m.email = NonEmpty(NormalizeEmail(ctx.OptionalString(obj, "email", prefix)));
  std::string orcid = Trim(ctx.OptionalString(obj, "orcid", prefix));
  if (!orcid.empty()) {
    if (orcid.back() == 'x') orcid.back() = 'X';
    if (!IsValidOrcid(orcid)) ctx.Fail(prefix + "orcid", "malformed ORCID '" + orcid + "'");
    m.orcid = orcid;
  }
  m.researcher_id = NonEmpty(Trim(ctx.OptionalString(obj, "researcher_id", prefix)));
  m.affiliation_raw = ctx.OptionalString(obj, "affiliation", prefix);
  m.organization = NonEmpty(NormalizeName(ctx.OptionalString(obj, "organization", prefix)));
  m.city = NonEmpty(NormalizeName(ctx.OptionalString(obj, "city", prefix)));
  m.country = NonEmpty(NormalizeName(ctx.OptionalString(obj, "country", prefix)));
  return m;
}

PublicationRecord ParseRecord(const std::string& line, const LineContext& ctx,
                              std::set<std::string>* unknown) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    ctx.Fail("<json>", e.what());
  }
  if (!obj.is_object()) ctx.Fail("<json>", "expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!KnownPublicationFields().contains(key)) unknown->insert(key);
  }

  PublicationRecord rec;
  rec.pub_id = Trim(ctx.String(obj, "pub_id"));
  if (rec.pub_id.empty()) ctx.Fail("pub_id", "empty");
  rec.year = static_cast<int>(ctx.Integer(obj, "year"));

  const std::string doc_type = ctx.String(obj, "doc_type");
  const auto parsed_type = ParseDocType(doc_type);
  if (!parsed_type) ctx.Fail("doc_type", "unknown document type '" + doc_type + "'");
  rec.doc_type = *parsed_type;

  const std::string index = ctx.String(obj, "source_index");
  const auto parsed_index = ParseSourceIndex(index);
  if (!parsed_index) ctx.Fail("source_index", "unknown index '" + index + "'");
  rec.source_index = *parsed_index;

  const json& scs = ctx.Require(obj, "subject_categories");
  if (!scs.is_array() || scs.empty()) {
    ctx.Fail("subject_categories", "expected a non-empty array");
  }
  for (const auto& sc : scs) {
    if (!sc.is_string() || Trim(sc.get<std::string>()).empty()) {
      ctx.Fail("subject_categories", "expected non-empty strings");
    }
    std::string id = Trim(sc.get<std::string>());
    if (std::find(rec.subject_categories.begin(), rec.subject_categories.end(), id) ==
        rec.subject_categories.end()) {
      rec.subject_categories.push_back(std::move(id));
    }
  }

  rec.journal = ctx.OptionalString(obj, "journal");
  rec.citation_count = ctx.Integer(obj, "citation_count");
  if (rec.citation_count < 0) ctx.Fail("citation_count", "negative");
  rec.census_date = Trim(ctx.String(obj, "census_date"));
  if (rec.year > CensusYear(rec.census_date, ctx)) {
    ctx.Fail("year", "publication year after census date");
  }

  const json& authors = ctx.Require(obj, "authors");
  if (!authors.is_array() || authors.empty()) {
    ctx.Fail("authors", "expected a non-empty array");
  }
  for (size_t i = 0; i < authors.size(); ++i) {
    rec.mentions.push_back(ParseAuthor(authors[i], i, ctx, unknown));
  }
  return rec;
}

void WarnUnknown(const std::set<std::string>& unknown, const std::string& source,
                 std::vector<std::string>* warnings) {
  if (warnings == nullptr) return;
  for (const auto& field : unknown) {
    warnings->push_back(source + ": ignoring unknown field '" + field + "'");
  }
}

int ParseInt(const std::string& text, const CsvReader& reader,
             const std::string& field) {
  int value = 0;
  const std::string trimmed = Trim(text);
  const auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc() || ptr != trimmed.data() + trimmed.size() || trimmed.empty()) {
    throw ParseError(reader.source(), reader.line(), field,
                     "expected an integer, got '" + text + "'");
  }
  return value;
}

bool ParseBool(const std::string& text, const CsvReader& reader,
               const std::string& field) {
  const std::string t = NormalizeEmail(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no" || t.empty()) return false;
  throw ParseError(reader.source(), reader.line(), field,
                   "expected 0/1, got '" + text + "'");
}

}  // namespace

std::string_view ToString(DocType type) {
  switch (type) {
    case DocType::kArticle: return "article";
    case DocType::kReview: return "review";
    case DocType::kLetter: return "letter";
    case DocType::kProceedings: return "proceedings";
    case DocType::kOther: return "other";
  }
  return "other";
}

std::string_view ToString(SourceIndex index) {
  switch (index) {
    case SourceIndex::kCore: return "core";
    case SourceIndex::kEsci: return "esci";
    case SourceIndex::kOther: return "other";
  }
  return "other";
}

std::optional<DocType> ParseDocType(std::string_view text) {
  for (DocType t : {DocType::kArticle, DocType::kReview, DocType::kLetter,
                    DocType::kProceedings, DocType::kOther}) {
    if (ToString(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<SourceIndex> ParseSourceIndex(std::string_view text) {
  for (SourceIndex s : {SourceIndex::kCore, SourceIndex::kEsci, SourceIndex::kOther}) {
    if (ToString(s) == text) return s;
  }
  return std::nullopt;
}

DocTypeSet DefaultDocTypes() {
  return {DocType::kArticle, DocType::kReview, DocType::kLetter,
          DocType::kProceedings};
}

YearRange ParseYearRange(std::string_view text) {
  const auto parse = [&](std::string_view part) {
    int value = 0;
    const std::string t = Trim(part);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      throw Error("invalid year range '" + std::string(text) + "'");
    }
    return value;
  };
  const size_t colon = text.find(':');
  YearRange range;
  if (colon == std::string_view::npos) {
    range.first = range.last = parse(text);
  } else {
    range.first = parse(text.substr(0, colon));
    range.last = parse(text.substr(colon + 1));
  }
  if (range.first > range.last) {
    throw Error("invalid year range '" + std::string(text) + "': start after end");
  }
  return range;
}

AuthorMention MakeMention(std::string full_name, std::string_view last,
                          std::string_view first) {
  AuthorMention m;
  std::string raw_last(last);
  std::string raw_first(first);
  if (Trim(raw_last).empty()) SplitFullName(full_name, &raw_last, &raw_first);
  m.raw_full_name = std::move(full_name);
  m.last_name = NormalizeName(raw_last);
  m.first_name = NormalizeName(raw_first);
  return m;
}

std::vector<PublicationRecord> ParsePublications(
    std::istream& in, const std::string& source, const LoadOptions& options,
    std::vector<std::string>* warnings) {
  std::vector<PublicationRecord> kept;
  std::unordered_map<std::string, long> seen;
  std::set<std::string> unknown;
  std::string line;
  long line_no = 0;
  const int first_year = options.FirstRetainedYear();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const LineContext ctx(source, line_no);
    PublicationRecord rec = ParseRecord(line, ctx, &unknown);
    const auto [it, inserted] = seen.emplace(rec.pub_id, line_no);
    if (!inserted) {
      throw ValidationError(source + ": duplicate pub_id '" + rec.pub_id +
                            "' on lines " + std::to_string(it->second) +
                            " and " + std::to_string(line_no));
    }
    if (!options.doc_filter.contains(rec.doc_type)) continue;
    if (rec.source_index != SourceIndex::kCore) continue;
    if (rec.year < first_year) continue;
    kept.push_back(std::move(rec));
  }
  WarnUnknown(unknown, source, warnings);
  std::sort(kept.begin(), kept.end(),
            [](const PublicationRecord& a, const PublicationRecord& b) {
              return a.pub_id < b.pub_id;
            });
  return kept;
}

std::vector<PublicationRecord> LoadPublications(
    const std::filesystem::path& path, const LoadOptions& options,
    std::vector<std::string>* warnings) {
  auto in = OpenInput(path);
  return ParsePublications(in, path.string(), options, warnings);
}

void WritePublications(std::ostream& out,
                       const std::vector<PublicationRecord>& pubs) {
  for (const auto& rec : pubs) {
    ordered_json obj;
    obj["pub_id"] = rec.pub_id;
    obj["year"] = rec.year;
    obj["doc_type"] = ToString(rec.doc_type);
    obj["source_index"] = ToString(rec.source_index);
    obj["subject_categories"] = rec.subject_categories;
    obj["journal"] = rec.journal;
    obj["citation_count"] = rec.citation_count;
    obj["census_date"] = rec.census_date;
    ordered_json authors = ordered_json::array();
    for (const auto& m : rec.mentions) {
      ordered_json a;
      a["full_name"] = m.raw_full_name;
      a["last_name"] = m.last_name;
      a["first_name"] = m.first_name;
      if (m.email) a["email"] = *m.email;
      if (m.orcid) a["orcid"] = *m.orcid;
      if (m.researcher_id) a["researcher_id"] = *m.researcher_id;
      if (!m.affiliation_raw.empty()) a["affiliation"] = m.affiliation_raw;
      if (m.organization) a["organization"] = *m.organization;
      if (m.city) a["city"] = *m.city;
      if (m.country) a["country"] = *m.country;
      authors.push_back(std::move(a));
    }
    obj["authors"] = std::move(authors);
    out << obj.dump() << '\n';
  }
}

Corpus::Corpus(std::vector<PublicationRecord> pubs) : pubs_(std::move(pubs)) {
  std::stable_sort(pubs_.begin(), pubs_.end(),
                   [](const PublicationRecord& a, const PublicationRecord& b) {
                     return a.pub_id < b.pub_id;
                   });
  index_.reserve(pubs_.size());
  for (size_t i = 0; i < pubs_.size(); ++i) {
    if (!index_.emplace(pubs_[i].pub_id, i).second) {
      throw ValidationError("duplicate pub_id '" + pubs_[i].pub_id + "'");
    }
  }
}

const PublicationRecord* Corpus::Find(std::string_view pub_id) const {
  const auto it = index_.find(std::string(pub_id));
  return it == index_.end() ? nullptr : &pubs_[it->second];
}

const PublicationRecord& Corpus::Get(std::string_view pub_id) const {
  const PublicationRecord* rec = Find(pub_id);
  if (rec == nullptr) throw Error("unknown pub_id '" + std::string(pub_id) + "'");
  return *rec;
}

std::vector<RosterEntry> ParseRoster(std::istream& in,
                                     const std::string& source,
                                     const YearRange& window) {
  CsvReader reader(in, source);
  std::vector<RosterEntry> roster;
  std::map<std::string, long> seen;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    RosterEntry e;
    e.person_id = Trim(reader.Require(row, "person_id"));
    if (e.person_id.empty()) {
      throw ParseError(source, reader.line(), "person_id", "empty");
    }
    e.full_name = reader.Require(row, "full_name");
    e.university_id = Trim(reader.Require(row, "university_id"));
    e.field_code = Trim(reader.Require(row, "field_code"));
    if (const auto it = row.find("sc_hint"); it != row.end()) {
      e.sc_hint = NonEmpty(Trim(it->second));
    }
    for (const auto& item : SplitList(reader.Require(row, "active_years"))) {
      const int year = ParseInt(item, reader, "active_years");
      if (!window.Contains(year)) {
        throw ValidationError(source + ":" + std::to_string(reader.line()) +
                              ": person '" + e.person_id + "' active year " +
                              std::to_string(year) + " outside window " +
                              std::to_string(window.first) + ":" +
                              std::to_string(window.last));
      }
      e.active_years.insert(year);
    }
    if (e.active_years.empty()) {
      throw ValidationError(source + ":" + std::to_string(reader.line()) +
                            ": person '" + e.person_id +
                            "' has no active years");
    }
    if (const auto it = row.find("linked_pub_ids"); it != row.end()) {
      e.linked_pub_ids = SplitList(it->second);
    }
    const auto [it, inserted] = seen.emplace(e.person_id, reader.line());
    if (!inserted) {
      throw ValidationError(source + ": duplicate person_id '" + e.person_id +
                            "' on lines " + std::to_string(it->second) +
                            " and " + std::to_string(reader.line()));
    }
    roster.push_back(std::move(e));
  }
  std::sort(roster.begin(), roster.end(),
            [](const RosterEntry& a, const RosterEntry& b) {
              return a.person_id < b.person_id;
            });
  return roster;
}

std::vector<RosterEntry> LoadRoster(const std::filesystem::path& path,
                                    const YearRange& window) {
  auto in = OpenInput(path);
  return ParseRoster(in, path.string(), window);
}

void WriteRoster(std::ostream& out, const std::vector<RosterEntry>& roster) {
  WriteCsvRow(out, {"person_id", "full_name", "university_id", "field_code",
                    "sc_hint", "active_years", "linked_pub_ids"});
  for (const auto& e : roster) {
    std::vector<std::string> years;
    for (int y : e.active_years) years.push_back(std::to_string(y));
    WriteCsvRow(out, {e.person_id, e.full_name, e.university_id, e.field_code,
                      e.sc_hint.value_or(""), JoinList(years),
                      JoinList(e.linked_pub_ids)});
  }
}

namespace {

std::string NormalizeDomain(std::string_view domain) {
  std::string d = NormalizeEmail(domain);
  while (!d.empty() && (d.front() == '%' || d.front() == '@' || d.front() == '.')) {
    d.erase(d.begin());
  }
  return d;
}

template <typename T>
void Dedup(std::vector<T>* items) {
  std::vector<T> out;
  for (auto& item : *items) {
    if (item.empty()) continue;
    if (std::find(out.begin(), out.end(), item) == out.end()) {
      out.push_back(std::move(item));
    }
  }
  *items = std::move(out);
}

}  // namespace

UniversityRegistry::UniversityRegistry(std::vector<University> universities)
    : universities_(std::move(universities)) {
  std::set<std::string> ids;
  for (auto& u : universities_) {
    if (u.university_id.empty()) throw ValidationError("registry: empty university_id");
    if (!ids.insert(u.university_id).second) {
      throw ValidationError("registry: duplicate university_id '" +
                            u.university_id + "'");
    }
    for (auto& v : u.organization_variants) v = NormalizeName(v);
    for (auto& d : u.email_domains) d = NormalizeDomain(d);
    Dedup(&u.organization_variants);
    Dedup(&u.email_domains);
    for (const auto& v : u.organization_variants) {
      const auto [it, inserted] = by_variant_.emplace(v, u.university_id);
      if (!inserted) {
        throw ValidationError("registry: organization variant '" + v +
                              "' claimed by both '" + it->second + "' and '" +
                              u.university_id + "'");
      }
    }
    for (const auto& d : u.email_domains) {
      const auto [it, inserted] = by_domain_.emplace(d, u.university_id);
      if (!inserted) {
        throw ValidationError("registry: email domain '" + d +
                              "' claimed by both '" + it->second + "' and '" +
                              u.university_id + "'");
      }
    }
  }
}

const University* UniversityRegistry::Find(std::string_view university_id) const {
  for (const auto& u : universities_) {
    if (u.university_id == university_id) return &u;
  }
  return nullptr;
}

std::optional<std::string> UniversityRegistry::MatchOrganization(
    std::string_view organization) const {
  const auto it = by_variant_.find(std::string(organization));
  if (it == by_variant_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> UniversityRegistry::MatchEmail(
    std::string_view email) const {
  const std::string e = NormalizeEmail(email);
  // Suffixes starting after '@' or '.', longest first.
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] != '@' && e[i] != '.') continue;
    const auto it = by_domain_.find(e.substr(i + 1));
    if (it != by_domain_.end()) return it->second;
  }
  return std::nullopt;
}

UniversityRegistry ParseRegistry(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  std::vector<University> universities;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    University u;
    u.university_id = Trim(reader.Require(row, "university_id"));
    u.official_name = reader.Require(row, "official_name");
    u.email_domains = SplitList(reader.Require(row, "email_domains"));
    u.organization_variants = SplitList(reader.Require(row, "organization_variants"));
    universities.push_back(std::move(u));
  }
  return UniversityRegistry(std::move(universities));
}

UniversityRegistry LoadRegistry(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseRegistry(in, path.string());
}

void WriteRegistry(std::ostream& out, const UniversityRegistry& registry) {
  WriteCsvRow(out, {"university_id", "official_name", "email_domains",
                    "organization_variants"});
  for (const auto& u : registry.universities()) {
    WriteCsvRow(out, {u.university_id, u.official_name, JoinList(u.email_domains),
                      JoinList(u.organization_variants)});
  }
}

SCScheme::SCScheme(std::vector<SubjectCategory> categories)
    : categories_(std::move(categories)) {
  for (size_t i = 0; i < categories_.size(); ++i) {
    const auto& sc = categories_[i];
    if (sc.sc_id.empty()) throw ValidationError("scheme: empty sc_id");
    if (sc.area_id.empty()) {
      throw ValidationError("scheme: SC '" + sc.sc_id + "' has no area");
    }
    if (!index_.emplace(sc.sc_id, i).second) {
      throw ValidationError("scheme: duplicate sc_id '" + sc.sc_id + "'");
    }
  }
}

const SubjectCategory* SCScheme::Find(std::string_view sc_id) const {
  const auto it = index_.find(std::string(sc_id));
  return it == index_.end() ? nullptr : &categories_[it->second];
}

const SubjectCategory& SCScheme::Get(std::string_view sc_id) const {
  const SubjectCategory* sc = Find(sc_id);
  if (sc == nullptr) throw Error("unknown subject category '" + std::string(sc_id) + "'");
  return *sc;
}

SCScheme ParseScheme(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  std::vector<SubjectCategory> categories;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    SubjectCategory sc;
    sc.sc_id = Trim(reader.Require(row, "sc_id"));
    sc.name = reader.Require(row, "name");
    sc.area_id = Trim(reader.Require(row, "area_id"));
    sc.excluded_area = ParseBool(reader.Require(row, "excluded_area"), reader, "excluded_area");
    sc.is_multidisciplinary = ParseBool(reader.Require(row, "is_multidisciplinary"),
                                        reader, "is_multidisciplinary");
    categories.push_back(std::move(sc));
  }
  return SCScheme(std::move(categories));
}

SCScheme LoadScheme(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseScheme(in, path.string());
}

void WriteScheme(std::ostream& out, const SCScheme& scheme) {
  WriteCsvRow(out, {"sc_id", "name", "area_id", "excluded_area", "is_multidisciplinary"});
  for (const auto& sc : scheme.categories()) {
    WriteCsvRow(out, {sc.sc_id, sc.name, sc.area_id, sc.excluded_area ? "1" : "0",
                      sc.is_multidisciplinary ? "1" : "0"});
  }
}

void FieldIncidence::Add(const std::string& field_code, const std::string& sc_id,
                         double incidence) {
  rows_[field_code][sc_id] = incidence;
}

double FieldIncidence::Incidence(std::string_view field_code,
                                 std::string_view sc_id) const {
  const auto f = rows_.find(std::string(field_code));
  if (f == rows_.end()) return 0.0;
  const auto s = f->second.find(std::string(sc_id));
  return s == f->second.end() ? 0.0 : s->second;
}

std::optional<std::string> FieldIncidence::Top(std::string_view field_code) const {
  const auto f = rows_.find(std::string(field_code));
  if (f == rows_.end() || f->second.empty()) return std::nullopt;
  const std::string* best = nullptr;
  double best_value = 0.0;
  for (const auto& [sc, value] : f->second) {
    if (best == nullptr || value > best_value) {
      best = &sc;
      best_value = value;
    }
  }
  return *best;
}

FieldIncidence ParseIncidence(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  FieldIncidence incidence;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    const std::string& text = reader.Require(row, "incidence");
    double value = 0.0;
    try {
      size_t used = 0;
      value = std::stod(text, &used);
      if (Trim(text.substr(used)).size() > 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ParseError(source, reader.line(), "incidence",
                       "expected a number, got '" + text + "'");
    }
    incidence.Add(Trim(reader.Require(row, "field_code")),
                  Trim(reader.Require(row, "sc_id")), value);
  }
  return incidence;
}

FieldIncidence LoadIncidence(const std::filesystem::path& path) {
  auto in = OpenInput(path);
  return ParseIncidence(in, path.string());
}

void WriteIncidence(std::ostream& out, const FieldIncidence& incidence) {
  WriteCsvRow(out, {"field_code", "sc_id", "incidence"});
  for (const auto& [field, scs] : incidence.rows()) {
    for (const auto& [sc, value] : scs) {
      WriteCsvRow(out, {field, sc, fmt::format("{}", value)});
    }
  }
}

}  // namespace bibperf
