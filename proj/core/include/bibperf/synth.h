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

#ifndef BIBPERF_SYNTH_H_
#define BIBPERF_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bibperf/corpus.h"
#include "bibperf/disambig.h"

namespace bibperf {

// Seeded synthetic academia: universities with faculty (on the roster),
// non-faculty publishers (absent from the roster) and an external co-author
// pool. All randomness is keyed by (seed, entity id).
struct SynthConfig {
  uint64_t seed = 42;
  int n_universities = 5;
  int n_researchers = 200;  // faculty across all universities
  int n_scs = 6;
  int n_areas = 3;
  int n_external = 0;  // 0 -> same as n_researchers
  YearRange window{2015, 2019};
  int recency_year = 2020;  // every active publisher has output this year

  // Publications per year ~ lognormal; each SC shifts mu by a keyed offset in
  // [-sc_mu_spread, sc_mu_spread].
  double productivity_mu = 0.2;
  double productivity_sigma = 0.6;
  double sc_mu_spread = 0.3;
  // Citations ~ floor(scale * (U^(-1/alpha) - 1)); scale per SC is keyed in
  // [citation_scale_min, citation_scale_max].
  double citation_alpha = 1.6;
  double citation_scale_min = 3.0;
  double citation_scale_max = 12.0;
  double coauthor_mean = 2.0;          // extra authors per publication (Poisson)
  double internal_coauthor_share = 0.5;
  double multi_sc_rate = 0.2;          // publications listing a second SC
  double filtered_doc_rate = 0.05;     // doc_type other or ESCI-indexed

  // Non-faculty publishers per university: share_u = share * (1 + spread * v)
  // with v keyed in [-1, 1], capped at 0.9.
  double non_faculty_share = 0.0;
  double non_faculty_share_spread = 0.6;
  double non_faculty_productivity_multiplier = 0.5;
  double inactive_faculty_share = 0.05;  // faculty with no publications at all
  double late_hire_rate = 0.1;           // hired inside the window after its first year

  double orcid_missing_rate = 0.0;
  double email_missing_rate = 0.0;
  double homonym_rate = 0.0;             // faculty given another's name key
  double affiliation_variant_rate = 0.0; // mentions using a non-canonical variant

  // Throws ValidationError naming the offending field.
  void Validate() const;
};

// Recognized keys are the field names above; window as "2015:2019".
SynthConfig ParseSynthConfig(const std::map<std::string, std::string>& values,
                             const std::string& source);

enum class PersonKind { kFaculty, kNonFaculty, kExternal };
std::string_view ToString(PersonKind kind);

struct SynthPerson {
  std::string person_id;
  PersonKind kind = PersonKind::kFaculty;
  std::string university_id;  // empty for external
  std::string sc_id;
  std::string field_code;
  std::string last_name;
  std::string first_name;
  std::string orcid;
  std::string email;
  std::string organization;
  std::set<int> active_years;  // faculty only
  bool inactive = false;
  std::vector<std::string> pub_ids;  // sorted; every authored publication
};

struct GroundTruth {
  std::vector<SynthPerson> persons;  // sorted by person_id
  std::map<MentionRef, std::string> mention_person;

  const SynthPerson* Find(const std::string& person_id) const;
};

struct SynthWorld {
  std::vector<PublicationRecord> publications;  // sorted by pub_id
  std::vector<RosterEntry> roster;
  std::vector<University> universities;
  std::vector<SubjectCategory> scheme;
  FieldIncidence incidence;
  GroundTruth truth;
};

// Throws ValidationError for invalid or infeasible configurations (e.g.
// more homonym pairs than researchers allow).
SynthWorld Generate(const SynthConfig& config, int threads = 1);

// publications.jsonl, roster.csv, registry.csv, scheme.csv, incidence.csv,
// ground_truth.csv, ground_truth_mentions.csv.
void WriteWorld(const SynthWorld& world, const std::filesystem::path& dir);
void WriteGroundTruth(std::ostream& persons, std::ostream& mentions,
                      const GroundTruth& truth);

// Reference FSS evaluation computed directly from the definitions, sharing
// no code with the scoring module. Cell means are full corpus scans.
struct OracleSubject {
  std::string subject_id;
  std::string university_id;
  std::string sc_id;
  double t = 0.0;
  std::vector<std::string> pub_ids;
};

struct OracleScores {
  std::map<std::string, double> fss_r;  // by subject_id
  std::map<std::string, double> baseline;  // by SC
  // (university_id, level name, key) -> fss_u
  std::map<std::tuple<std::string, std::string, std::string>, double> fss_u;
};

OracleScores ComputeOracleScores(const std::vector<OracleSubject>& subjects,
                                 const std::vector<PublicationRecord>& publications,
                                 const std::vector<SubjectCategory>& scheme,
                                 const YearRange& window);

}  // namespace bibperf

#endif  // BIBPERF_SYNTH_H_
