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

#include "bibperf/fss.h"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "bibperf/error.h"
#include "bibperf/keyed_random.h"
#include "bibperf/parallel.h"

namespace bibperf {

std::string_view ToString(Mode mode) {
  return mode == Mode::kSupervised ? "supervised" : "unsupervised";
}

std::optional<Mode> ParseMode(std::string_view text) {
  if (text == "supervised") return Mode::kSupervised;
  if (text == "unsupervised") return Mode::kUnsupervised;
  return std::nullopt;
}

std::string_view ToString(ObsRule rule) {
  return rule == ObsRule::kLiteral ? "literal" : "strict";
}

std::optional<ObsRule> ParseObsRule(std::string_view text) {
  if (text == "literal") return ObsRule::kLiteral;
  if (text == "strict") return ObsRule::kStrict;
  return std::nullopt;
}

std::string_view ToString(Level level) {
  switch (level) {
    case Level::kSc:
      return "sc";
    case Level::kArea:
      return "area";
    case Level::kOverall:
      return "overall";
  }
  return "overall";
}

std::optional<Level> ParseLevel(std::string_view text) {
  if (text == "sc") return Level::kSc;
  if (text == "area") return Level::kArea;
  if (text == "overall") return Level::kOverall;
  return std::nullopt;
}

void CitationCells::Add(int year, const std::string& sc_id, long long citations) {
  CitationCell& cell = cells_[CellKey{year, sc_id}];
  cell.year = year;
  cell.sc_id = sc_id;
  cell.citation_sum += citations;
  cell.pub_count += 1;
  cell.mean_citations =
      static_cast<double>(cell.citation_sum) / static_cast<double>(cell.pub_count);
}

const CitationCell* CitationCells::Find(int year, std::string_view sc_id) const {
  const auto it = cells_.find(CellKey{year, std::string(sc_id)});
  return it == cells_.end() ? nullptr : &it->second;
}

CitationCells BuildCitationCells(const Corpus& corpus) {
  CitationCells cells;
  for (const PublicationRecord& pub : corpus.publications()) {
    for (const std::string& sc : pub.subject_categories) {
      cells.Add(pub.year, sc, pub.citation_count);
    }
  }
  return cells;
}

double NormalizedCitationScore(const PublicationRecord& pub, std::string_view sc_id,
                               const CitationCells& cells) {
  const CitationCell* cell = cells.Find(pub.year, sc_id);
  if (cell == nullptr) {
    throw Error(fmt::format("no citation cell for year {} and SC {} (publication {})",
                            pub.year, sc_id, pub.pub_id));
  }
  if (cell->mean_citations == 0.0) return 0.0;
  return static_cast<double>(pub.citation_count) / cell->mean_citations;
}

double PublicationImpact(const PublicationRecord& pub, const CitationCells& cells) {
  if (pub.subject_categories.empty()) {
    throw Error(fmt::format("publication {} has no subject category", pub.pub_id));
  }
  double sum = 0.0;
  for (const std::string& sc : pub.subject_categories) {
    sum += NormalizedCitationScore(pub, sc, cells);
  }
  return sum / static_cast<double>(pub.subject_categories.size());
}

std::vector<Subject> SupervisedSubjects(const std::vector<RosterEntry>& roster,
                                        const Corpus& corpus, const YearRange& window) {
  std::vector<Subject> subjects;
  subjects.reserve(roster.size());
  for (const RosterEntry& entry : roster) {
    Subject s;
    s.subject_id = entry.person_id;
    s.mode = Mode::kSupervised;
    s.university_id = entry.university_id;
    s.field_code = entry.field_code;
    s.sc_hint = entry.sc_hint;
    int active = 0;
    for (const int year : entry.active_years) {
      if (window.Contains(year)) ++active;
    }
    s.t = active;
    for (const std::string& id : entry.linked_pub_ids) {
      if (corpus.Find(id) != nullptr) s.pub_ids.push_back(id);
    }
    std::sort(s.pub_ids.begin(), s.pub_ids.end());
    s.pub_ids.erase(std::unique(s.pub_ids.begin(), s.pub_ids.end()), s.pub_ids.end());
    subjects.push_back(std::move(s));
  }
  std::sort(subjects.begin(), subjects.end(),
            [](const Subject& a, const Subject& b) { return a.subject_id < b.subject_id; });
  return subjects;
}

std::vector<Subject> UnsupervisedSubjects(const DerivedStaff& staff,
                                          const std::vector<AuthorCluster>& clusters,
                                          double assumed_t) {
  std::map<std::string_view, const AuthorCluster*> by_id;
  for (const AuthorCluster& c : clusters) by_id[c.cluster_id] = &c;
  std::vector<Subject> subjects;
  for (const auto& [university, units] : staff.by_university) {
    for (const StaffUnit& unit : units) {
      Subject s;
      s.subject_id = unit.unit_id;
      s.mode = Mode::kUnsupervised;
      s.university_id = university;
      s.t = assumed_t;
      for (const std::string& cid : unit.cluster_ids) {
        const auto it = by_id.find(cid);
        if (it == by_id.end()) {
          throw Error(fmt::format("staff unit {} references unknown cluster {}",
                                  unit.unit_id, cid));
        }
        for (const MentionRef& ref : it->second->mention_refs) {
          s.pub_ids.push_back(ref.pub_id);
        }
      }
      std::sort(s.pub_ids.begin(), s.pub_ids.end());
      s.pub_ids.erase(std::unique(s.pub_ids.begin(), s.pub_ids.end()), s.pub_ids.end());
      subjects.push_back(std::move(s));
    }
  }
  std::sort(subjects.begin(), subjects.end(),
            [](const Subject& a, const Subject& b) { return a.subject_id < b.subject_id; });
  return subjects;
}

namespace {

// SCs sharing the highest publication count, sorted.
std::vector<std::string> ModalScs(const std::map<std::string, int>& counts) {
  int best = 0;
  for (const auto& [sc, n] : counts) best = std::max(best, n);
  std::vector<std::string> tied;
  for (const auto& [sc, n] : counts) {
    if (n == best && n > 0) tied.push_back(sc);
  }
  return tied;
}

std::string ResolveSupervised(const Subject& subject,
                              const std::vector<std::string>& tied,
                              const FieldIncidence* incidence) {
  if (tied.empty()) {
    if (subject.sc_hint) return *subject.sc_hint;
    if (incidence != nullptr) {
      if (auto top = incidence->Top(subject.field_code)) return *top;
    }
    throw Error(fmt::format(
        "subject {} has no production, no sc_hint and no incidence for field '{}'",
        subject.subject_id, subject.field_code));
  }
  if (tied.size() == 1) return tied.front();
  if (incidence != nullptr) {
    const std::string* best = nullptr;
    double best_value = 0.0;
    for (const std::string& sc : tied) {
      const double v = incidence->Incidence(subject.field_code, sc);
      if (v > best_value) {
        best_value = v;
        best = &sc;
      }
    }
    if (best != nullptr) return *best;
  }
  if (subject.sc_hint &&
      std::find(tied.begin(), tied.end(), *subject.sc_hint) != tied.end()) {
    return *subject.sc_hint;
  }
  return tied.front();
}

}  // namespace

std::string AssignPrevailingSc(const Subject& subject, const Corpus& corpus,
                               const ScAssignmentOptions& options) {
  std::map<std::string, int> counts;
  for (const std::string& id : subject.pub_ids) {
    const PublicationRecord& pub = corpus.Get(id);
    if (subject.mode == Mode::kSupervised && !options.lookback.Contains(pub.year)) {
      continue;
    }
    for (const std::string& sc : pub.subject_categories) ++counts[sc];
  }
  const std::vector<std::string> tied = ModalScs(counts);
  if (subject.mode == Mode::kSupervised) {
    return ResolveSupervised(subject, tied, options.incidence);
  }
  if (tied.empty()) {
    throw Error(fmt::format("subject {} has no publications", subject.subject_id));
  }
  if (tied.size() == 1) return tied.front();
  return tied[KeyedIndex(options.seed, "prevailing-sc:" + subject.subject_id, tied.size())];
}

ResearcherScore ComputeFssR(const Subject& subject, const std::string& sc_id,
                            const Corpus& corpus, const YearRange& window,
                            const CitationCells& cells) {
  if (!(subject.t > 0.0)) {
    throw Error(fmt::format("subject {} has non-positive t ({})", subject.subject_id,
                            subject.t));
  }
  ResearcherScore score;
  score.subject_id = subject.subject_id;
  score.mode = subject.mode;
  score.university_id = subject.university_id;
  score.sc_id = sc_id;
  score.t = subject.t;
  double sum = 0.0;
  for (const std::string& id : subject.pub_ids) {
    const PublicationRecord& pub = corpus.Get(id);
    if (!window.Contains(pub.year)) continue;
    if (pub.mentions.empty()) {
      throw Error(fmt::format("publication {} has an empty byline", pub.pub_id));
    }
    PublicationTerm term;
    term.pub_id = pub.pub_id;
    term.citations = pub.citation_count;
    double cbar = 0.0;
    for (const std::string& sc : pub.subject_categories) {
      const CitationCell* cell = cells.Find(pub.year, sc);
      if (cell != nullptr) cbar += cell->mean_citations;
    }
    term.mean_citations =
        pub.subject_categories.empty()
            ? 0.0
            : cbar / static_cast<double>(pub.subject_categories.size());
    term.normalized = PublicationImpact(pub, cells);
    term.fraction = 1.0 / static_cast<double>(pub.mentions.size());
    sum += term.normalized * term.fraction;
    score.terms.push_back(std::move(term));
  }
  score.n_pubs = static_cast<int>(score.terms.size());
  score.fss_r = sum / subject.t;
  return score;
}

std::map<std::string, SCBaseline> ComputeScBaselines(
    const std::vector<ResearcherScore>& scores) {
  std::map<std::string, SCBaseline> out;
  std::map<std::string, double> sums;
  for (const ResearcherScore& s : scores) {
    SCBaseline& b = out[s.sc_id];
    b.sc_id = s.sc_id;
    b.total_count += 1;
    if (s.fss_r > 0.0) {
      b.productive_count += 1;
      sums[s.sc_id] += s.fss_r;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.productive_count == 0) {
      it = out.erase(it);
      continue;
    }
    it->second.mean_fss_over_productive =
        sums[it->first] / static_cast<double>(it->second.productive_count);
    ++it;
  }
  return out;
}

namespace {

// Reason an SC is structurally excluded, or empty.
std::string StructuralReason(const SCScheme& scheme, const std::string& sc_id) {
  const SubjectCategory& sc = scheme.Get(sc_id);
  if (sc.excluded_area) return "excluded_area";
  if (sc.is_multidisciplinary) return "multidisciplinary";
  return {};
}

std::map<std::string, int> CountBySc(const std::vector<ResearcherScore>& scores) {
  std::map<std::string, int> counts;
  for (const ResearcherScore& s : scores) ++counts[s.sc_id];
  return counts;
}

std::vector<ResearcherScore> Without(std::vector<ResearcherScore> scores,
                                     const std::set<std::string>& dropped) {
  std::erase_if(scores,
                [&](const ResearcherScore& s) { return dropped.count(s.sc_id) > 0; });
  return scores;
}

int CountOf(const std::map<std::string, int>& counts, const std::string& sc) {
  const auto it = counts.find(sc);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace

PairedScores ApplyExclusions(std::vector<ResearcherScore> supervised,
                             std::vector<ResearcherScore> unsupervised,
                             const SCScheme& scheme, const ExclusionParams& params) {
  const std::map<std::string, int> sup_counts = CountBySc(supervised);
  const std::map<std::string, int> unsup_counts = CountBySc(unsupervised);
  std::set<std::string> all_scs;
  for (const auto& [sc, n] : sup_counts) all_scs.insert(sc);
  for (const auto& [sc, n] : unsup_counts) all_scs.insert(sc);

  PairedScores out;
  std::set<std::string> dropped;
  for (const std::string& sc : all_scs) {
    const int n_sup = CountOf(sup_counts, sc);
    const int n_unsup = CountOf(unsup_counts, sc);
    std::string reason = StructuralReason(scheme, sc);
    if (reason.empty()) {
      const bool sup_low = n_sup < params.min_obs;
      const bool unsup_low = n_unsup < params.min_obs;
      const bool drop = params.rule == ObsRule::kLiteral ? (sup_low && unsup_low)
                                                         : (sup_low || unsup_low);
      if (drop) reason = "min_obs";
    }
    if (!reason.empty()) {
      dropped.insert(sc);
      out.excluded.push_back(ExcludedSc{sc, reason, n_sup, n_unsup});
    }
  }
  out.supervised = Without(std::move(supervised), dropped);
  out.unsupervised = Without(std::move(unsupervised), dropped);
  return out;
}

std::vector<ResearcherScore> ApplyExclusions(std::vector<ResearcherScore> scores,
                                             const SCScheme& scheme,
                                             const ExclusionParams& params,
                                             std::vector<ExcludedSc>* excluded) {
  const std::map<std::string, int> counts = CountBySc(scores);
  const Mode mode = scores.empty() ? Mode::kSupervised : scores.front().mode;
  std::set<std::string> dropped;
  for (const auto& [sc, n] : counts) {
    std::string reason = StructuralReason(scheme, sc);
    if (reason.empty() && n < params.min_obs) reason = "min_obs";
    if (reason.empty()) continue;
    dropped.insert(sc);
    if (excluded != nullptr) {
      ExcludedSc e{sc, reason, 0, 0};
      (mode == Mode::kSupervised ? e.obs_supervised : e.obs_unsupervised) = n;
      excluded->push_back(std::move(e));
    }
  }
  return Without(std::move(scores), dropped);
}

std::vector<UniversityScore> ComputeFssU(const std::vector<ResearcherScore>& scores,
                                         const std::map<std::string, SCBaseline>& baselines,
                                         Level level, const SCScheme& scheme) {
  struct Accumulator {
    int n = 0;
    double sum = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Accumulator> acc;
  for (const ResearcherScore& s : scores) {
    std::string key;
    switch (level) {
      case Level::kSc:
        key = s.sc_id;
        break;
      case Level::kArea:
        key = scheme.Get(s.sc_id).area_id;
        break;
      case Level::kOverall:
        key = "all";
        break;
    }
    const auto b = baselines.find(s.sc_id);
    if (b == baselines.end() || !(b->second.mean_fss_over_productive > 0.0)) {
      throw Error(fmt::format("no baseline for SC {} (researcher {})", s.sc_id,
                              s.subject_id));
    }
    Accumulator& a = acc[{s.university_id, key}];
    a.n += 1;
    a.sum += s.fss_r / b->second.mean_fss_over_productive;
  }
  std::vector<UniversityScore> out;
  out.reserve(acc.size());
  for (const auto& [k, a] : acc) {
    out.push_back(UniversityScore{k.first, level, k.second, a.n,
                                  a.sum / static_cast<double>(a.n)});
  }
  return out;
}

std::vector<ResearcherScore> ScoreSubjects(const std::vector<Subject>& subjects,
                                           const Corpus& corpus,
                                           const CitationCells& cells,
                                           const FieldIncidence* incidence,
                                           const ScoringOptions& options) {
  ScAssignmentOptions sc_options;
  sc_options.seed = options.seed;
  sc_options.lookback =
      YearRange{options.window.last - options.sc_lookback + 1, options.window.last};
  sc_options.incidence = incidence;
  std::vector<ResearcherScore> out(subjects.size());
  ParallelFor(subjects.size(), options.threads, [&](size_t i) {
    const std::string sc = AssignPrevailingSc(subjects[i], corpus, sc_options);
    out[i] = ComputeFssR(subjects[i], sc, corpus, options.window, cells);
  });
  std::sort(out.begin(), out.end(), [](const ResearcherScore& a, const ResearcherScore& b) {
    return a.subject_id < b.subject_id;
  });
  return out;
}

ModeScores Aggregate(std::vector<ResearcherScore> researchers, const SCScheme& scheme,
                     std::vector<ExcludedSc>* excluded) {
  ModeScores out;
  out.researchers = std::move(researchers);
  out.baselines = ComputeScBaselines(out.researchers);
  // An SC without a productive member has no baseline; its researchers are
  // dropped and the SC is reported.
  std::map<std::string, int> unscaled;
  for (const ResearcherScore& s : out.researchers) {
    if (out.baselines.count(s.sc_id) == 0) ++unscaled[s.sc_id];
  }
  for (const auto& [sc, n] : unscaled) {
    if (excluded == nullptr) break;
    const Mode mode = out.researchers.front().mode;
    ExcludedSc e{sc, "no_productive", 0, 0};
    (mode == Mode::kSupervised ? e.obs_supervised : e.obs_unsupervised) = n;
    excluded->push_back(std::move(e));
  }
  std::erase_if(out.researchers, [&](const ResearcherScore& s) {
    return out.baselines.count(s.sc_id) == 0;
  });
  for (const Level level : {Level::kSc, Level::kArea, Level::kOverall}) {
    std::vector<UniversityScore> part =
        ComputeFssU(out.researchers, out.baselines, level, scheme);
    out.universities.insert(out.universities.end(), part.begin(), part.end());
  }
  return out;
}

ScoreSet ScoreBothModes(const std::vector<Subject>& supervised,
                        const std::vector<Subject>& unsupervised,
                        const Corpus& corpus, const SCScheme& scheme,
                        const FieldIncidence* incidence,
                        const ScoringOptions& options) {
  const CitationCells cells = BuildCitationCells(corpus);
  PairedScores paired = ApplyExclusions(
      ScoreSubjects(supervised, corpus, cells, incidence, options),
      ScoreSubjects(unsupervised, corpus, cells, incidence, options), scheme,
      options.exclusions);
  ScoreSet out;
  out.excluded = std::move(paired.excluded);
  out.supervised = Aggregate(std::move(paired.supervised), scheme, &out.excluded);
  out.unsupervised = Aggregate(std::move(paired.unsupervised), scheme, &out.excluded);
  return out;
}

}  // namespace bibperf
