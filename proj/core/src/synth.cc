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

#include "bibperf/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "bibperf/csv.h"
#include "bibperf/error.h"
#include "bibperf/keyed_random.h"
#include "bibperf/normalize.h"
#include "bibperf/parallel.h"

namespace bibperf {
namespace {

constexpr std::array<std::string_view, 20> kSyllables = {
    "ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru",
    "sa", "te", "vi", "zo", "ca", "de", "ri", "lo", "mu", "ne"};

// Grouped by initial so homonyms can keep the initial and change the name.
constexpr std::array<std::array<std::string_view, 4>, 10> kFirstNames = {{
    {"Marco", "Maria", "Matteo", "Martina"},
    {"Luca", "Laura", "Lorenzo", "Lucia"},
    {"Giovanni", "Giulia", "Giorgio", "Gianna"},
    {"Andrea", "Anna", "Alessandro", "Alice"},
    {"Francesca", "Francesco", "Federico", "Fabio"},
    {"Paolo", "Paola", "Pietro", "Patrizia"},
    {"Stefano", "Sara", "Simone", "Silvia"},
    {"Roberto", "Rita", "Riccardo", "Rosa"},
    {"Chiara", "Carlo", "Claudio", "Cristina"},
    {"Elena", "Enrico", "Emma", "Edoardo"},
}};

constexpr std::array<std::string_view, 12> kCities = {
    "Arcadia", "Borealis", "Calderon", "Dunmore", "Esterra", "Fenwick",
    "Galloway", "Halden", "Isola", "Juniper", "Kestrel", "Lunaria"};

double Uniform(uint64_t seed, std::string_view key) {
  return static_cast<double>(KeyedHash(seed, key) >> 11) * 0x1.0p-53;
}

// Distinct for distinct indices: fixed-length base-20 syllable code.
std::string LastName(size_t index, size_t length) {
  std::string name;
  for (size_t i = 0; i < length; ++i) {
    name += kSyllables[index % kSyllables.size()];
    index /= kSyllables.size();
  }
  name += "ni";
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string CityName(int u) {
  const size_t i = static_cast<size_t>(u) % kCities.size();
  const size_t round = static_cast<size_t>(u) / kCities.size();
  std::string name(kCities[i]);
  if (round > 0) name += LastName(round, 1);
  return name;
}

struct UniversityInfo {
  University registry;
  std::string city;
  std::string canonical_org;  // normalized
  std::string domain;
  double non_faculty_share = 0.0;
};

struct ScInfo {
  SubjectCategory category;
  double mu = 0.0;
  double citation_scale = 0.0;
  std::optional<std::string> neighbor;  // second SC for multi-SC records
};

struct World {
  const SynthConfig& config;
  std::vector<UniversityInfo> universities;
  std::vector<ScInfo> scs;
  std::vector<SynthPerson> persons;
  std::vector<int> career_start;  // by person index
  std::vector<int> hire_year;     // 0 unless a late hire
  // Indices of publishing university persons by (university, SC).
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> colleagues;
  std::vector<size_t> externals;
};

bool InRange(double v) { return v >= 0.0 && v <= 1.0; }

std::string PubId(const std::string& person_id, int seq) {
  return fmt::format("W{}-{:03d}", person_id, seq);
}

// Whether person i can appear on a publication of `year`.
bool CanAuthor(const World& w, size_t i, int year) {
  const SynthPerson& p = w.persons[i];
  if (p.inactive) return false;
  if (year < w.career_start[i] || year > w.config.recency_year) return false;
  if (w.hire_year[i] != 0 && w.config.window.Contains(year) && year < w.hire_year[i]) {
    return false;
  }
  return true;
}

AuthorMention MentionFor(const World& w, size_t i, std::mt19937_64& rng) {
  const SynthConfig& c = w.config;
  const SynthPerson& p = w.persons[i];
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  AuthorMention m = MakeMention(p.last_name + ", " + p.first_name, p.last_name, p.first_name);
  if (u01(rng) >= c.email_missing_rate) m.email = p.email;
  if (u01(rng) >= c.orcid_missing_rate) m.orcid = p.orcid;
  std::string org = p.organization;
  std::string city = "Elsewhere";
  if (!p.university_id.empty()) {
    const UniversityInfo* info = nullptr;
    for (const UniversityInfo& u : w.universities) {
      if (u.registry.university_id == p.university_id) info = &u;
    }
    city = info->city;
    if (u01(rng) < c.affiliation_variant_rate) {
      const auto& variants = info->registry.organization_variants;
      std::vector<std::string> others;
      for (const std::string& v : variants) {
        if (v != info->canonical_org) others.push_back(v);
      }
      if (!others.empty()) {
        std::uniform_int_distribution<size_t> pick(0, others.size() - 1);
        org = others[pick(rng)];
      }
    }
  }
  m.organization = NormalizeName(org);
  m.city = city;
  m.country = "Italy";
  m.affiliation_raw = org + ", " + city + ", Italy";
  return m;
}

struct Draft {
  PublicationRecord pub;
  std::vector<size_t> authors;  // byline order
};

Draft MakePublication(const World& w, size_t lead, int year, int seq, bool forced,
                      std::mt19937_64& rng) {
  const SynthConfig& c = w.config;
  const SynthPerson& p = w.persons[lead];
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Draft d;
  PublicationRecord& pub = d.pub;
  pub.pub_id = PubId(p.person_id, seq);
  pub.year = year;
  pub.census_date = fmt::format("{}-12-31", c.recency_year);
  if (!forced && u01(rng) < c.filtered_doc_rate) {
    if (u01(rng) < 0.5) {
      pub.doc_type = DocType::kOther;
    } else {
      pub.source_index = SourceIndex::kEsci;
    }
  } else if (!forced) {
    const double r = u01(rng);
    pub.doc_type = r < 0.80   ? DocType::kArticle
                   : r < 0.90 ? DocType::kReview
                   : r < 0.97 ? DocType::kProceedings
                              : DocType::kLetter;
  }
  const ScInfo* sc = nullptr;
  for (const ScInfo& s : w.scs) {
    if (s.category.sc_id == p.sc_id) sc = &s;
  }
  pub.subject_categories.push_back(p.sc_id);
  if (sc->neighbor && u01(rng) < c.multi_sc_rate) {
    pub.subject_categories.push_back(*sc->neighbor);
  }
  std::uniform_int_distribution<int> journal(1, 4);
  pub.journal = fmt::format("Journal of {} {}", sc->category.name, journal(rng));
  const double draw = std::max(u01(rng), 1e-12);
  const double citations = sc->citation_scale * (std::pow(draw, -1.0 / c.citation_alpha) - 1.0);
  pub.citation_count = static_cast<long long>(std::min(std::floor(citations), 1e6));

  // Co-authors: colleagues of the same university and SC, or externals.
  d.authors.push_back(lead);
  std::poisson_distribution<int> extra(c.coauthor_mean);
  const int k = extra(rng);
  const auto& pool = w.colleagues.at({p.university_id, p.sc_id});
  for (int attempt = 0; attempt < 4 * k && static_cast<int>(d.authors.size()) < k + 1;
       ++attempt) {
    size_t cand = 0;
    if (u01(rng) < c.internal_coauthor_share && pool.size() > 1) {
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      cand = pool[pick(rng)];
      if (w.persons[cand].kind == PersonKind::kNonFaculty &&
          u01(rng) >= c.non_faculty_productivity_multiplier) {
        continue;
      }
    } else if (!w.externals.empty()) {
      std::uniform_int_distribution<size_t> pick(0, w.externals.size() - 1);
      cand = w.externals[pick(rng)];
    } else {
      continue;
    }
    if (!CanAuthor(w, cand, year)) continue;
    if (std::find(d.authors.begin(), d.authors.end(), cand) != d.authors.end()) continue;
    d.authors.push_back(cand);
  }
  std::shuffle(d.authors.begin(), d.authors.end(), rng);
  for (const size_t a : d.authors) pub.mentions.push_back(MentionFor(w, a, rng));
  return d;
}

// All publications led by university person i.
std::vector<Draft> PublicationsOf(const World& w, size_t i) {
  const SynthConfig& c = w.config;
  const SynthPerson& p = w.persons[i];
  std::vector<Draft> out;
  if (p.inactive) return out;
  std::mt19937_64 rng = KeyedEngine(c.seed, "pubs:" + p.person_id);
  const ScInfo* sc = nullptr;
  for (const ScInfo& s : w.scs) {
    if (s.category.sc_id == p.sc_id) sc = &s;
  }
  std::normal_distribution<double> log_rate(sc->mu, c.productivity_sigma);
  double rate = std::exp(log_rate(rng));
  if (p.kind == PersonKind::kNonFaculty) rate *= c.non_faculty_productivity_multiplier;
  std::poisson_distribution<int> per_year(rate);
  int seq = 0;
  const auto kept = [&](const PublicationRecord& pub) {
    return pub.doc_type != DocType::kOther && pub.source_index == SourceIndex::kCore;
  };
  bool has_first = false, has_window = false, has_recent = false;
  for (int year = w.career_start[i]; year <= c.recency_year; ++year) {
    if (!CanAuthor(w, i, year)) continue;
    const int n = per_year(rng);
    for (int k = 0; k < n; ++k) {
      Draft d = MakePublication(w, i, year, ++seq, false, rng);
      has_first |= year == w.career_start[i];
      has_window |= c.window.Contains(year) && kept(d.pub);
      has_recent |= year == c.recency_year;
      out.push_back(std::move(d));
    }
  }
  if (!has_first) {
    out.push_back(MakePublication(w, i, w.career_start[i], ++seq, true, rng));
  }
  if (!has_window) {
    const int from = w.hire_year[i] != 0 ? w.hire_year[i] : c.window.first;
    std::uniform_int_distribution<int> year(from, c.window.last);
    out.push_back(MakePublication(w, i, year(rng), ++seq, true, rng));
  }
  if (!has_recent) {
    out.push_back(MakePublication(w, i, c.recency_year, ++seq, true, rng));
  }
  return out;
}

void BuildSchemeAndRegistry(World* w) {
  const SynthConfig& c = w->config;
  for (int s = 0; s < c.n_scs; ++s) {
    ScInfo info;
    info.category.sc_id = fmt::format("S{:02d}", s + 1);
    info.category.name = fmt::format("Field {}", s + 1);
    info.category.area_id = fmt::format("A{}", s % c.n_areas + 1);
    const std::string key = "sc:" + info.category.sc_id;
    info.mu = c.productivity_mu + c.sc_mu_spread * (2.0 * Uniform(c.seed, key + ":mu") - 1.0);
    info.citation_scale =
        c.citation_scale_min +
        (c.citation_scale_max - c.citation_scale_min) * Uniform(c.seed, key + ":cit");
    if (s + c.n_areas < c.n_scs) {
      info.neighbor = fmt::format("S{:02d}", s + c.n_areas + 1);
    } else if (s - c.n_areas >= 0) {
      info.neighbor = fmt::format("S{:02d}", s - c.n_areas + 1);
    }
    w->scs.push_back(std::move(info));
  }
  for (int u = 0; u < c.n_universities; ++u) {
    UniversityInfo info;
    info.city = CityName(u);
    info.registry.university_id = fmt::format("U{:02d}", u + 1);
    info.registry.official_name = "University of " + info.city;
    info.canonical_org = NormalizeName("Univ " + info.city);
    info.registry.organization_variants = {info.canonical_org,
                                           NormalizeName(info.city + " Univ"),
                                           NormalizeName("University of " + info.city)};
    info.domain = "uni" + Lower(info.city) + ".edu";
    info.registry.email_domains = {info.domain};
    const double v = 2.0 * Uniform(c.seed, "share:" + info.registry.university_id) - 1.0;
    info.non_faculty_share =
        std::clamp(c.non_faculty_share * (1.0 + c.non_faculty_share_spread * v), 0.0, 0.9);
    w->universities.push_back(std::move(info));
  }
}

void AddPerson(World* w, SynthPerson p, int career_start, int hire_year) {
  w->persons.push_back(std::move(p));
  w->career_start.push_back(career_start);
  w->hire_year.push_back(hire_year);
}

void BuildPersons(World* w) {
  const SynthConfig& c = w->config;
  const auto sc_of = [&](const std::string& id) {
    return w->scs[KeyedIndex(c.seed, "sc-of:" + id, w->scs.size())].category.sc_id;
  };
  const auto start_of = [&](const std::string& id) {
    return c.window.first - 1 - static_cast<int>(KeyedIndex(c.seed, "start:" + id, 21));
  };
  for (int i = 0; i < c.n_researchers; ++i) {
    SynthPerson p;
    p.person_id = fmt::format("P{:05d}", i + 1);
    p.kind = PersonKind::kFaculty;
    p.university_id = w->universities[i % c.n_universities].registry.university_id;
    p.sc_id = sc_of(p.person_id);
    p.field_code = "F" + p.sc_id.substr(1);
    p.inactive = Uniform(c.seed, "inactive:" + p.person_id) < c.inactive_faculty_share;
    int hire = 0;
    if (!p.inactive && c.window.Length() > 1 &&
        Uniform(c.seed, "late:" + p.person_id) < c.late_hire_rate) {
      hire = c.window.first + 1 +
             static_cast<int>(KeyedIndex(c.seed, "hire:" + p.person_id,
                                         static_cast<size_t>(c.window.Length() - 1)));
    }
    for (int y = hire != 0 ? hire : c.window.first; y <= c.window.last; ++y) {
      p.active_years.insert(y);
    }
    const std::string id = p.person_id;
    AddPerson(w, std::move(p), start_of(id), hire);
  }
  int nf = 0;
  for (const UniversityInfo& u : w->universities) {
    const int faculty = c.n_researchers / c.n_universities +
                        ((&u - w->universities.data()) < c.n_researchers % c.n_universities);
    const double share = u.non_faculty_share;
    const int count =
        share <= 0.0 ? 0 : static_cast<int>(std::lround(faculty * share / (1.0 - share)));
    for (int k = 0; k < count; ++k) {
      SynthPerson p;
      p.person_id = fmt::format("N{:05d}", ++nf);
      p.kind = PersonKind::kNonFaculty;
      p.university_id = u.registry.university_id;
      p.sc_id = sc_of(p.person_id);
      p.field_code = "F" + p.sc_id.substr(1);
      const std::string id = p.person_id;
      AddPerson(w, std::move(p), start_of(id), 0);
    }
  }
  const int n_external = c.n_external > 0 ? c.n_external : c.n_researchers;
  for (int k = 0; k < n_external; ++k) {
    SynthPerson p;
    p.person_id = fmt::format("E{:05d}", k + 1);
    p.kind = PersonKind::kExternal;
    p.sc_id = sc_of(p.person_id);
    p.field_code = "F" + p.sc_id.substr(1);
    p.organization = k % 3 == 0 ? "Natl Res Council"
                                : fmt::format("Inst Adv Studies {}", k % 7 + 1);
    const std::string id = p.person_id;
    AddPerson(w, std::move(p), 1990, 0);
  }

  // Names, identifiers and addresses.
  size_t length = 3;
  while (std::pow(static_cast<double>(kSyllables.size()), length) <
         static_cast<double>(w->persons.size())) {
    ++length;
  }
  for (size_t i = 0; i < w->persons.size(); ++i) {
    SynthPerson& p = w->persons[i];
    // 7919 is prime to 20, so i -> (7919 i + offset) mod 20^length is a bijection.
    const size_t modulus = static_cast<size_t>(std::pow(20.0, static_cast<double>(length)));
    const size_t offset = static_cast<size_t>(KeyedHash(c.seed, "name-offset") % modulus);
    p.last_name = LastName((i * 7919 + offset) % modulus, length);
    const auto& group = kFirstNames[KeyedIndex(c.seed, "initial:" + p.person_id, kFirstNames.size())];
    p.first_name = std::string(group[KeyedIndex(c.seed, "first:" + p.person_id, group.size())]);
    p.orcid = fmt::format("0000-{:04d}-{:04d}-{:04d}", (i + 1) / 100000000 % 10000,
                          (i + 1) / 10000 % 10000, (i + 1) % 10000);
  }

  // Homonym pairs: the second member takes the first's surname and initial.
  std::vector<size_t> faculty;
  for (size_t i = 0; i < w->persons.size(); ++i) {
    if (w->persons[i].kind == PersonKind::kFaculty) faculty.push_back(i);
  }
  const size_t pairs = static_cast<size_t>(std::lround(c.homonym_rate * faculty.size()));
  if (2 * pairs > faculty.size()) {
    throw ValidationError(fmt::format(
        "synth config: homonym_rate {} needs {} homonym pairs but only {} faculty exist",
        c.homonym_rate, pairs, faculty.size()));
  }
  std::mt19937_64 rng = KeyedEngine(c.seed, "homonyms");
  std::shuffle(faculty.begin(), faculty.end(), rng);
  for (size_t k = 0; k < pairs; ++k) {
    const SynthPerson& a = w->persons[faculty[2 * k]];
    SynthPerson& b = w->persons[faculty[2 * k + 1]];
    b.last_name = a.last_name;
    for (const auto& group : kFirstNames) {
      if (group[0][0] != a.first_name[0]) continue;
      for (const std::string_view name : group) {
        if (name != a.first_name) {
          b.first_name = std::string(name);
          break;
        }
      }
    }
  }

  for (size_t i = 0; i < w->persons.size(); ++i) {
    SynthPerson& p = w->persons[i];
    std::string domain;
    if (p.kind == PersonKind::kExternal) {
      domain = p.organization == "Natl Res Council"
                   ? "cnr.example.org"
                   : fmt::format("ias{}.example.org", p.organization.back());
    } else {
      for (const UniversityInfo& u : w->universities) {
        if (u.registry.university_id == p.university_id) {
          domain = u.domain;
          p.organization = u.canonical_org;
        }
      }
    }
    p.email = Lower(p.first_name) + "." + Lower(p.last_name) + "@" + domain;
  }

  for (size_t i = 0; i < w->persons.size(); ++i) {
    const SynthPerson& p = w->persons[i];
    if (p.kind == PersonKind::kExternal) {
      w->externals.push_back(i);
    } else if (!p.inactive) {
      w->colleagues[{p.university_id, p.sc_id}].push_back(i);
    }
  }
}

}  // namespace

std::string_view ToString(PersonKind kind) {
  switch (kind) {
    case PersonKind::kFaculty:
      return "faculty";
    case PersonKind::kNonFaculty:
      return "non_faculty";
    case PersonKind::kExternal:
      return "external";
  }
  return "external";
}

void SynthConfig::Validate() const {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError("synth config: " + field + " " + why);
  };
  if (n_universities < 1) fail("n_universities", "must be positive");
  if (n_researchers < 1) fail("n_researchers", "must be positive");
  if (n_scs < 1) fail("n_scs", "must be positive");
  if (n_areas < 1 || n_areas > n_scs) fail("n_areas", "must be in 1..n_scs");
  if (n_external < 0) fail("n_external", "must be non-negative");
  if (window.first > window.last) fail("window", "must have first <= last");
  if (recency_year < window.last) fail("recency_year", "must not precede the window end");
  if (!(productivity_sigma >= 0.0)) fail("productivity_sigma", "must be non-negative");
  if (!(sc_mu_spread >= 0.0)) fail("sc_mu_spread", "must be non-negative");
  if (!(citation_alpha > 0.0)) fail("citation_alpha", "must be positive");
  if (!(citation_scale_min > 0.0) || citation_scale_max < citation_scale_min) {
    fail("citation_scale_min", "must be positive and not above citation_scale_max");
  }
  if (!(coauthor_mean >= 0.0)) fail("coauthor_mean", "must be non-negative");
  if (!(non_faculty_productivity_multiplier > 0.0)) {
    fail("non_faculty_productivity_multiplier", "must be positive");
  }
  if (!(non_faculty_share_spread >= 0.0)) fail("non_faculty_share_spread", "must be non-negative");
  if (!(non_faculty_share < 1.0)) fail("non_faculty_share", "must be below 1");
  const std::vector<std::pair<const char*, double>> rates = {
      {"internal_coauthor_share", internal_coauthor_share},
      {"multi_sc_rate", multi_sc_rate},
      {"filtered_doc_rate", filtered_doc_rate},
      {"non_faculty_share", non_faculty_share},
      {"inactive_faculty_share", inactive_faculty_share},
      {"late_hire_rate", late_hire_rate},
      {"orcid_missing_rate", orcid_missing_rate},
      {"email_missing_rate", email_missing_rate},
      {"homonym_rate", homonym_rate},
      {"affiliation_variant_rate", affiliation_variant_rate}};
  for (const auto& [name, v] : rates) {
    if (!InRange(v)) fail(name, fmt::format("must be in [0, 1], got {}", v));
  }
  if (homonym_rate > 0.5) {
    fail("homonym_rate", "cannot exceed 0.5 (each homonym pairs two researchers)");
  }
}

SynthConfig ParseSynthConfig(const std::map<std::string, std::string>& values,
                             const std::string& source) {
  SynthConfig c;
  const std::map<std::string, double*> doubles = {
      {"productivity_mu", &c.productivity_mu},
      {"productivity_sigma", &c.productivity_sigma},
      {"sc_mu_spread", &c.sc_mu_spread},
      {"citation_alpha", &c.citation_alpha},
      {"citation_scale_min", &c.citation_scale_min},
      {"citation_scale_max", &c.citation_scale_max},
      {"coauthor_mean", &c.coauthor_mean},
      {"internal_coauthor_share", &c.internal_coauthor_share},
      {"multi_sc_rate", &c.multi_sc_rate},
      {"filtered_doc_rate", &c.filtered_doc_rate},
      {"non_faculty_share", &c.non_faculty_share},
      {"non_faculty_share_spread", &c.non_faculty_share_spread},
      {"non_faculty_productivity_multiplier", &c.non_faculty_productivity_multiplier},
      {"inactive_faculty_share", &c.inactive_faculty_share},
      {"late_hire_rate", &c.late_hire_rate},
      {"orcid_missing_rate", &c.orcid_missing_rate},
      {"email_missing_rate", &c.email_missing_rate},
      {"homonym_rate", &c.homonym_rate},
      {"affiliation_variant_rate", &c.affiliation_variant_rate}};
  const std::map<std::string, int*> ints = {{"n_universities", &c.n_universities},
                                            {"n_researchers", &c.n_researchers},
                                            {"n_scs", &c.n_scs},
                                            {"n_areas", &c.n_areas},
                                            {"n_external", &c.n_external},
                                            {"recency_year", &c.recency_year}};
  for (const auto& [key, value] : values) {
    try {
      size_t used = 0;
      if (const auto d = doubles.find(key); d != doubles.end()) {
        *d->second = std::stod(value, &used);
      } else if (const auto i = ints.find(key); i != ints.end()) {
        *i->second = std::stoi(value, &used);
      } else if (key == "seed") {
        c.seed = std::stoull(value, &used);
      } else if (key == "window") {
        c.window = ParseYearRange(value);
        used = value.size();
      } else {
        throw ParseError(source, 0, key, "unknown synth key");
      }
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(source, 0, key, "invalid value '" + value + "'");
    }
  }
  c.Validate();
  return c;
}

const SynthPerson* GroundTruth::Find(const std::string& person_id) const {
  const auto it = std::lower_bound(
      persons.begin(), persons.end(), person_id,
      [](const SynthPerson& p, const std::string& id) { return p.person_id < id; });
  return it != persons.end() && it->person_id == person_id ? &*it : nullptr;
}

SynthWorld Generate(const SynthConfig& config, int threads) {
  config.Validate();
  World w{config, {}, {}, {}, {}, {}, {}, {}};
  BuildSchemeAndRegistry(&w);
  BuildPersons(&w);

  std::vector<std::vector<Draft>> drafts(w.persons.size());
  ParallelFor(w.persons.size(), threads, [&](size_t i) {
    if (w.persons[i].kind != PersonKind::kExternal) drafts[i] = PublicationsOf(w, i);
  });

  SynthWorld out;
  for (size_t i = 0; i < drafts.size(); ++i) {
    for (Draft& d : drafts[i]) {
      for (size_t pos = 0; pos < d.authors.size(); ++pos) {
        SynthPerson& author = w.persons[d.authors[pos]];
        author.pub_ids.push_back(d.pub.pub_id);
        out.truth.mention_person[MentionRef{d.pub.pub_id, static_cast<int>(pos)}] =
            author.person_id;
      }
      out.publications.push_back(std::move(d.pub));
    }
  }
  std::sort(out.publications.begin(), out.publications.end(),
            [](const PublicationRecord& a, const PublicationRecord& b) {
              return a.pub_id < b.pub_id;
            });
  for (SynthPerson& p : w.persons) std::sort(p.pub_ids.begin(), p.pub_ids.end());

  for (const SynthPerson& p : w.persons) {
    if (p.kind != PersonKind::kFaculty) continue;
    RosterEntry e;
    e.person_id = p.person_id;
    e.full_name = p.last_name + ", " + p.first_name;
    e.university_id = p.university_id;
    e.field_code = p.field_code;
    if (p.inactive && Uniform(config.seed, "hint:" + p.person_id) < 0.5) e.sc_hint = p.sc_id;
    e.active_years = p.active_years;
    e.linked_pub_ids = p.pub_ids;
    out.roster.push_back(std::move(e));
  }
  for (const UniversityInfo& u : w.universities) out.universities.push_back(u.registry);
  for (const ScInfo& s : w.scs) out.scheme.push_back(s.category);
  for (const ScInfo& s : w.scs) {
    const std::string field = "F" + s.category.sc_id.substr(1);
    out.incidence.Add(field, s.category.sc_id, s.neighbor ? 0.7 : 1.0);
    if (s.neighbor) out.incidence.Add(field, *s.neighbor, 0.3);
  }
  out.truth.persons = std::move(w.persons);
  std::sort(out.truth.persons.begin(), out.truth.persons.end(),
            [](const SynthPerson& a, const SynthPerson& b) { return a.person_id < b.person_id; });
  return out;
}

void WriteGroundTruth(std::ostream& persons, std::ostream& mentions,
                      const GroundTruth& truth) {
  WriteCsvRow(persons, {"person_id", "kind", "university_id", "sc_id", "field_code",
                        "full_name", "orcid", "email", "inactive", "n_pubs"});
  for (const SynthPerson& p : truth.persons) {
    WriteCsvRow(persons, {p.person_id, std::string(ToString(p.kind)), p.university_id,
                          p.sc_id, p.field_code, p.last_name + ", " + p.first_name,
                          p.orcid, p.email, p.inactive ? "1" : "0",
                          std::to_string(p.pub_ids.size())});
  }
  WriteCsvRow(mentions, {"pub_id", "position", "person_id"});
  for (const auto& [ref, person] : truth.mention_person) {
    WriteCsvRow(mentions, {ref.pub_id, std::to_string(ref.position), person});
  }
}

void WriteWorld(const SynthWorld& world, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("publications.jsonl");
    WritePublications(out, world.publications);
  }
  {
    auto out = open("roster.csv");
    WriteRoster(out, world.roster);
  }
  {
    auto out = open("registry.csv");
    WriteRegistry(out, UniversityRegistry(world.universities));
  }
  {
    auto out = open("scheme.csv");
    WriteScheme(out, SCScheme(world.scheme));
  }
  {
    auto out = open("incidence.csv");
    WriteIncidence(out, world.incidence);
  }
  auto persons = open("ground_truth.csv");
  auto mentions = open("ground_truth_mentions.csv");
  WriteGroundTruth(persons, mentions, world.truth);
}

}  // namespace bibperf
