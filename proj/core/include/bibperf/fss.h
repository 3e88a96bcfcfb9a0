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

#ifndef BIBPERF_FSS_H_
#define BIBPERF_FSS_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bibperf/corpus.h"
#include "bibperf/disambig.h"
#include "bibperf/staff.h"

namespace bibperf {

// Fractional Scientific Strength.
//
// Researcher level:  fss_r = (1/t) * sum_i (c_i / cbar_i) * f_i
//   c_i     citations of window publication i
//   cbar_i  mean citations of all corpus publications of the same year and
//           subject category (averaged over SCs for multi-SC publications)
//   f_i     1 / byline length
// University level:  fss_u = (1/RS_U) * sum_j fss_r_j / baseline(sc_j)
//   baseline(sc) is the mean fss_r of the productive (fss_r > 0) researchers
//   of that SC; unproductive staff still count in RS_U.

enum class Mode { kSupervised, kUnsupervised };
std::string_view ToString(Mode mode);
std::optional<Mode> ParseMode(std::string_view text);

struct CellKey {
  int year = 0;
  std::string sc_id;
  auto operator<=>(const CellKey&) const = default;
};

struct CitationCell {
  int year = 0;
  std::string sc_id;
  double mean_citations = 0.0;
  long long citation_sum = 0;
  int pub_count = 0;
};

class CitationCells {
 public:
  void Add(int year, const std::string& sc_id, long long citations);
  const CitationCell* Find(int year, std::string_view sc_id) const;
  const std::map<CellKey, CitationCell>& cells() const { return cells_; }

 private:
  std::map<CellKey, CitationCell> cells_;
};

// One cell per (year, SC) with at least one publication; a publication listed
// under several SCs counts in each.
CitationCells BuildCitationCells(const Corpus& corpus);

// c / cbar for the (pub.year, sc_id) cell; 0 when cbar is 0. Throws Error when
// the cell does not exist.
double NormalizedCitationScore(const PublicationRecord& pub, std::string_view sc_id,
                               const CitationCells& cells);

// Mean of NormalizedCitationScore over the publication's SCs.
double PublicationImpact(const PublicationRecord& pub, const CitationCells& cells);

// A researcher to score: a roster member (supervised) or a derived staff
// unit (unsupervised).
struct Subject {
  std::string subject_id;
  Mode mode = Mode::kSupervised;
  std::string university_id;
  std::vector<std::string> pub_ids;  // sorted; whole known oeuvre
  double t = 0.0;
  std::string field_code;
  std::optional<std::string> sc_hint;
};

// Roster members; t = |active_years inside window|. Linked pub_ids absent from
// the corpus (filtered doc types or indexes) are dropped.
std::vector<Subject> SupervisedSubjects(const std::vector<RosterEntry>& roster,
                                        const Corpus& corpus, const YearRange& window);

// Derived staff units with a fixed t (5 for a five-year window).
std::vector<Subject> UnsupervisedSubjects(const DerivedStaff& staff,
                                          const std::vector<AuthorCluster>& clusters,
                                          double assumed_t);

struct ScAssignmentOptions {
  uint64_t seed = 0;
  // Supervised production range used for the modal SC.
  YearRange lookback{2001, 2019};
  const FieldIncidence* incidence = nullptr;
};

// Prevailing SC of a subject.
//  unsupervised: modal SC over the whole oeuvre; ties resolved by a draw keyed
//    on (seed, subject_id), so the result is order- and thread-independent.
//  supervised: modal SC over lookback production. Ties go to the tied SC with
//    the highest field-code incidence, then to sc_hint if tied, then to the
//    smallest sc_id. Without production: sc_hint, else the field code's top
//    incidence SC, else Error.
std::string AssignPrevailingSc(const Subject& subject, const Corpus& corpus,
                               const ScAssignmentOptions& options);

struct PublicationTerm {
  std::string pub_id;
  long long citations = 0;
  double mean_citations = 0.0;  // cbar; mean over SCs for multi-SC records
  double normalized = 0.0;      // PublicationImpact
  double fraction = 0.0;        // f = 1 / byline length
};

struct ResearcherScore {
  std::string subject_id;
  Mode mode = Mode::kSupervised;
  std::string university_id;
  std::string sc_id;
  double t = 0.0;
  int n_pubs = 0;
  double fss_r = 0.0;
  std::vector<PublicationTerm> terms;
};

// Throws Error when t <= 0 or a window publication lacks a citation cell.
ResearcherScore ComputeFssR(const Subject& subject, const std::string& sc_id,
                            const Corpus& corpus, const YearRange& window,
                            const CitationCells& cells);

struct SCBaseline {
  std::string sc_id;
  double mean_fss_over_productive = 0.0;
  int productive_count = 0;
  int total_count = 0;
};

// Per SC, mean fss_r over productive researchers. SCs without productive
// researchers get no entry.
std::map<std::string, SCBaseline> ComputeScBaselines(
    const std::vector<ResearcherScore>& scores);

enum class ObsRule { kLiteral, kStrict };
std::string_view ToString(ObsRule rule);
std::optional<ObsRule> ParseObsRule(std::string_view text);

struct ExclusionParams {
  int min_obs = 10;
  // literal: drop an SC only when both datasets have fewer than min_obs
  // researchers in it; strict: drop it when either does.
  ObsRule rule = ObsRule::kLiteral;
};

struct ExcludedSc {
  std::string sc_id;
  std::string reason;  // excluded_area, multidisciplinary, min_obs, no_productive
  int obs_supervised = 0;
  int obs_unsupervised = 0;
};

struct PairedScores {
  std::vector<ResearcherScore> supervised;
  std::vector<ResearcherScore> unsupervised;
  std::vector<ExcludedSc> excluded;
};

// Drops researchers whose SC lies in an excluded area or is
// multidisciplinary, then SCs failing the observation threshold.
PairedScores ApplyExclusions(std::vector<ResearcherScore> supervised,
                             std::vector<ResearcherScore> unsupervised,
                             const SCScheme& scheme, const ExclusionParams& params);

// Single-dataset variant: an SC is dropped when it has fewer than min_obs.
std::vector<ResearcherScore> ApplyExclusions(std::vector<ResearcherScore> scores,
                                             const SCScheme& scheme,
                                             const ExclusionParams& params,
                                             std::vector<ExcludedSc>* excluded = nullptr);

enum class Level { kSc, kArea, kOverall };
std::string_view ToString(Level level);
std::optional<Level> ParseLevel(std::string_view text);

struct UniversityScore {
  std::string university_id;
  Level level = Level::kOverall;
  std::string level_key;  // sc_id, area_id or "all"
  int rs_u = 0;
  double fss_u = 0.0;
};

// Aggregates staff scores per university and level key. Each researcher is
// scaled by the baseline of their own prevailing SC at every level. Throws
// Error naming the SC when a baseline is missing. Sorted by (university,
// key).
std::vector<UniversityScore> ComputeFssU(const std::vector<ResearcherScore>& scores,
                                         const std::map<std::string, SCBaseline>& baselines,
                                         Level level, const SCScheme& scheme);

struct ScoringOptions {
  YearRange window;
  int sc_lookback = 19;
  uint64_t seed = 0;
  double assumed_t = 5.0;
  ExclusionParams exclusions;
  int threads = 1;
};

struct ModeScores {
  std::vector<ResearcherScore> researchers;
  std::map<std::string, SCBaseline> baselines;
  std::vector<UniversityScore> universities;  // sc, area and overall levels
};

struct ScoreSet {
  ModeScores supervised;
  ModeScores unsupervised;
  std::vector<ExcludedSc> excluded;
};

// Prevailing SC + fss_r for every subject (parallel over subjects), ordered by
// subject_id.
std::vector<ResearcherScore> ScoreSubjects(const std::vector<Subject>& subjects,
                                           const Corpus& corpus,
                                           const CitationCells& cells,
                                           const FieldIncidence* incidence,
                                           const ScoringOptions& options);

// Baselines and the three university levels for one dataset. Researchers of
// an SC without a productive member are dropped and the SC is appended to
// *excluded with reason "no_productive".
ModeScores Aggregate(std::vector<ResearcherScore> researchers, const SCScheme& scheme,
                     std::vector<ExcludedSc>* excluded = nullptr);

// Full paired scoring: both modes, joint exclusions, baselines, FSS_U.
ScoreSet ScoreBothModes(const std::vector<Subject>& supervised,
                        const std::vector<Subject>& unsupervised,
                        const Corpus& corpus, const SCScheme& scheme,
                        const FieldIncidence* incidence,
                        const ScoringOptions& options);

// scores_researchers.csv: subject_id,mode,sc,t,n,fss_r
// scores_universities.csv: university_id,level,key,rs_u,fss_u
void WriteResearcherScores(std::ostream& out, const std::vector<ResearcherScore>& scores);
void WriteUniversityScores(std::ostream& out, const std::vector<UniversityScore>& scores);
void WriteExcludedScs(std::ostream& out, const std::vector<ExcludedSc>& excluded);
std::vector<ResearcherScore> ParseResearcherScores(std::istream& in, const std::string& source);
std::vector<UniversityScore> ParseUniversityScores(std::istream& in, const std::string& source);
std::vector<ResearcherScore> LoadResearcherScores(const std::filesystem::path& path);
std::vector<UniversityScore> LoadUniversityScores(const std::filesystem::path& path);

}  // namespace bibperf

#endif  // BIBPERF_FSS_H_
