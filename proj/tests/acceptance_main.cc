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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and runtime limits are fixed constants below.

#include <fmt/core.h>

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bibperf/compare.h"
#include "bibperf/disambig.h"
#include "bibperf/fss.h"
#include "bibperf/staff.h"
#include "bibperf/synth.h"
#include "pipeline.h"
#include "property_checks.h"
#include "test_support.h"
#include "json.hpp"

namespace bibperf {
namespace {

namespace fs = std::filesystem;

constexpr double kPearsonTarget = 0.813;
constexpr double kPearsonTolerance = 0.010;
constexpr double kSpearmanTarget = 0.686;
constexpr double kSpearmanTolerance = 0.005;
constexpr double kOracleTolerance = 1e-9;
constexpr double kDirectionalFraction = 0.90;
constexpr int kPropertyCases = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: unbounded
  std::function<Outcome()> run;
};

RankTable LoadFixture() {
  return LoadRankTable(testing::DataPath("table4_fixture.csv"));
}

// Recomputes ranks and percentiles from the fixture's scores alone.
RankTable RecomputedFixture() {
  const RankTable fixture = LoadFixture();
  std::map<std::string, std::string> names;
  for (const RankRow& row : fixture.rows) names[row.university_id] = row.name;
  return RankUniversities(UnsupervisedEntries(fixture), SupervisedEntries(fixture), names);
}

Outcome QuartileMatrixCriterion() {
  const RankTable table = RecomputedFixture();
  const QuartileMatrix m = QuartileConfusion(table);
  const QuartileMatrix expected = {{{12, 1, 4, 0}, {4, 8, 2, 2}, {1, 5, 6, 4}, {0, 2, 4, 10}}};
  const QuartileSummary s = SummarizeQuartiles(m);
  std::string rows;
  for (const auto& r : m) rows += fmt::format("[{},{},{},{}]", r[0], r[1], r[2], r[3]);
  return {m == expected && s.diagonal == 36 && s.above == 13 && s.below == 16,
          fmt::format("matrix={} diagonal={} above={} below={}", rows, s.diagonal, s.above,
                      s.below)};
}

Outcome RankJumpsCriterion() {
  const RankTable table = RecomputedFixture();
  const std::map<std::string, std::pair<int, int>> expected = {
      {"Messina", {1, 3}},
      {"Napoli \"Parthenope\"", {1, 3}},
      {"Enna", {1, 3}},
      {"Mediterranea di Reggio Calabria", {1, 3}},
      {"del Sannio", {2, 4}},
      {"Teramo", {2, 4}},
      {"\"Campus Bio-medico\"", {3, 1}},
      {"LUISS", {4, 2}},
      {"Urbino \"Carlo Bo\"", {4, 2}},
  };
  std::map<std::string, std::string> names;
  for (const RankRow& row : table.rows) names[row.university_id] = row.name;
  std::map<std::string, std::pair<int, int>> got;
  for (const RankJump& j : RankJumps(table, 2, 11).jumps) {
    got[names[j.university_id]] = {j.q_unsup, j.q_sup};
  }
  const size_t three = RankJumps(table, 3, 11).jumps.size();
  return {got == expected && three == 0,
          fmt::format("threshold2={} (expected 9, pairs {}) threshold3={}", got.size(),
                      got == expected ? "match" : "differ", three)};
}

Outcome CorrelationCriterion() {
  const GroupCorrelation g = CorrelateTable("overall", RecomputedFixture());
  const bool ok = g.n == 65 && g.pearson && g.spearman &&
                  std::fabs(*g.pearson - kPearsonTarget) <= kPearsonTolerance &&
                  std::fabs(*g.spearman - kSpearmanTarget) <= kSpearmanTolerance;
  return {ok, fmt::format("n={} pearson={:.5f} (target {} +/- {}) spearman={:.5f} (target {} "
                          "+/- {})",
                          g.n, g.pearson.value_or(NAN), kPearsonTarget, kPearsonTolerance,
                          g.spearman.value_or(NAN), kSpearmanTarget, kSpearmanTolerance)};
}

Outcome PercentileCriterion() {
  const RankTable fixture = LoadFixture();
  const RankTable computed = RecomputedFixture();
  int matched = 0;
  int ranks_matched = 0;
  for (size_t i = 0; i < fixture.rows.size(); ++i) {
    const RankRow& f = fixture.rows[i];
    const RankRow& c = computed.rows[i];
    matched += (f.unsup_perc == c.unsup_perc) + (f.sup_perc == c.sup_perc);
    ranks_matched += (f.unsup_rank == c.unsup_rank) + (f.sup_rank == c.sup_rank);
  }
  const bool anchors = PercentileForRank(5, 65) == 94 && PercentileForRank(9, 65) == 88 &&
                       PercentileForRank(33, 65) == 50;
  return {matched == 130 && ranks_matched == 130 && anchors,
          fmt::format("percentiles {}/130 ranks {}/130 anchors(5->94,9->88,33->50)={}", matched,
                      ranks_matched, anchors ? "ok" : "wrong")};
}

Outcome TopRankCriterion() {
  const RankTable table = RecomputedFixture();
  const RankJumpReport r = RankJumps(table, 2, 11);
  int delta_matches = 0;
  const RankTable fixture = LoadFixture();
  for (size_t i = 0; i < table.rows.size(); ++i) {
    delta_matches += table.rows[i].delta_rank == fixture.rows[i].delta_rank;
  }
  return {r.max_abs_delta_top_k == 6 && delta_matches == 65,
          fmt::format("max |delta rank| among supervised top-11 = {} (expected 6); delta column "
                      "{}/65",
                      r.max_abs_delta_top_k, delta_matches)};
}

RunConfig SynthRun(const fs::path& out, uint64_t seed,
                   const std::map<std::string, std::string>& synth) {
  RunConfig config;
  config.out = out;
  config.seed = seed;
  config.synth = synth;
  config.Validate();
  return config;
}

// Same settings the synth stage derives from a run configuration.
SynthWorld GenerateFor(const RunConfig& config) {
  std::map<std::string, std::string> values = config.synth;
  values.try_emplace("seed", std::to_string(config.seed));
  values.try_emplace("window", fmt::format("{}:{}", config.window.first, config.window.last));
  values.try_emplace("recency_year", std::to_string(config.filters.recency_year));
  return Generate(ParseSynthConfig(values, "acceptance"));
}

void RunStages(const RunConfig& config, std::initializer_list<Subcommand> stages) {
  for (Subcommand s : stages) RunPipeline(config, s);
}

struct OracleTally {
  double worst = 0.0;
  int researchers = 0;
  int universities = 0;
  std::string problem;
};

// Recomputes one mode from the scored subjects' SC and t and compares.
void CheckMode(const ModeScores& scores, const std::vector<Subject>& subjects,
               const std::vector<PublicationRecord>& pubs, const SCScheme& scheme,
               const YearRange& window, const std::string& label, OracleTally* tally) {
  std::map<std::string, const Subject*> by_id;
  for (const Subject& s : subjects) by_id[s.subject_id] = &s;
  std::vector<OracleSubject> oracle_subjects;
  for (const ResearcherScore& r : scores.researchers) {
    const Subject* s = by_id.at(r.subject_id);
    if (s->t != r.t) tally->problem = label + ": t differs for " + r.subject_id;
    oracle_subjects.push_back({s->subject_id, s->university_id, r.sc_id, s->t, s->pub_ids});
  }
  const OracleScores oracle =
      ComputeOracleScores(oracle_subjects, pubs, scheme.categories(), window);
  for (const ResearcherScore& r : scores.researchers) {
    tally->worst = std::max(tally->worst, std::fabs(oracle.fss_r.at(r.subject_id) - r.fss_r));
    ++tally->researchers;
  }
  if (scores.universities.size() != oracle.fss_u.size()) {
    tally->problem = fmt::format("{}: {} university scores vs {} from the oracle", label,
                                 scores.universities.size(), oracle.fss_u.size());
  }
  for (const UniversityScore& u : scores.universities) {
    const auto it =
        oracle.fss_u.find({u.university_id, std::string(ToString(u.level)), u.level_key});
    if (it == oracle.fss_u.end()) {
      tally->problem = label + ": oracle lacks " + u.university_id + "/" + u.level_key;
      continue;
    }
    tally->worst = std::max(tally->worst, std::fabs(it->second - u.fss_u));
    ++tally->universities;
  }
}

// Library pipeline on each synthetic world: load with the ingest filters,
// disambiguate, derive staff, score both modes.
Outcome OracleCriterion(const fs::path& scratch) {
  OracleTally tally;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const fs::path out = scratch / fmt::format("oracle_{}", seed);
    const RunConfig config =
        SynthRun(out, seed, {{"n_researchers", "200"}, {"non_faculty_share", "0.35"}});
    const SynthWorld world = GenerateFor(config);
    // The ingest filters apply on parse, so the corpus takes the same route.
    std::stringstream jsonl;
    WritePublications(jsonl, world.publications);
    LoadOptions load;
    load.window = config.window;
    load.sc_lookback = config.sc_lookback;
    const std::vector<PublicationRecord> pubs = ParsePublications(jsonl, "synthetic", load);
    const Corpus corpus(pubs);
    const SCScheme scheme(world.scheme);
    const std::vector<AuthorCluster> clusters = Disambiguate(corpus, ScoringRules{}, 1);
    const DerivedStaff staff =
        DeriveStaff(clusters, UniversityRegistry(world.universities), config.filters);

    const std::vector<Subject> sup = SupervisedSubjects(world.roster, corpus, config.window);
    const std::vector<Subject> unsup = UnsupervisedSubjects(staff, clusters, config.assumed_t);
    ScoringOptions options;
    options.window = config.window;
    options.sc_lookback = config.sc_lookback;
    options.seed = config.seed;
    options.assumed_t = config.assumed_t;
    options.exclusions = config.exclusions;
    const ScoreSet set =
        ScoreBothModes(sup, unsup, corpus, scheme, &world.incidence, options);
    CheckMode(set.supervised, sup, pubs, scheme, config.window,
              fmt::format("seed {} supervised", seed), &tally);
    CheckMode(set.unsupervised, unsup, pubs, scheme, config.window,
              fmt::format("seed {} unsupervised", seed), &tally);
  }
  return {tally.problem.empty() && tally.worst <= kOracleTolerance &&
              tally.researchers > 0 && tally.universities > 0,
          fmt::format("10 seeds, {} researcher and {} university scores, max |diff| = {:.3g} "
                      "(tolerance {}){}",
                      tally.researchers, tally.universities, tally.worst, kOracleTolerance,
                      tally.problem.empty() ? "" : "; " + tally.problem)};
}

Outcome CleanWorldCriterion(const fs::path& scratch) {
  int exact = 0;
  std::string detail;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const fs::path out = scratch / fmt::format("clean_{}", seed);
    const std::map<std::string, std::string> clean = {
        {"non_faculty_share", "0"},    {"orcid_missing_rate", "0"},
        {"email_missing_rate", "0"},   {"homonym_rate", "0"},
        {"affiliation_variant_rate", "0"}};
    const RunConfig config = SynthRun(out, seed, clean);
    RunStages(config, {Subcommand::kSynth, Subcommand::kIngest, Subcommand::kDisambiguate,
                       Subcommand::kDeriveStaff});
    const ArtifactLayout layout(out);
    LoadOptions load;
    load.window = config.window;
    load.sc_lookback = config.sc_lookback;
    const Corpus corpus(LoadPublications(layout.publications(), load));
    const auto clusters = LoadClusters(layout.clusters());
    const DerivedStaff staff = LoadStaff(layout.staff(), clusters);

    const SynthWorld world = GenerateFor(config);
    const GroundTruth& truth = world.truth;

    // Expected: faculty whose loaded publications include the window and pass
    // the age and recency filters, at universities with enough candidates.
    struct Span {
      int first = 1 << 30, last = -(1 << 30);
      bool in_window = false;
    };
    std::map<std::string, Span> spans;
    for (const auto& p : corpus.publications()) {
      for (size_t i = 0; i < p.mentions.size(); ++i) {
        const std::string& person = truth.mention_person.at({p.pub_id, static_cast<int>(i)});
        Span& s = spans[person];
        s.first = std::min(s.first, p.year);
        s.last = std::max(s.last, p.year);
        s.in_window |= config.window.Contains(p.year);
      }
    }
    std::map<std::string, int> candidates;
    std::map<std::string, std::set<std::string>> expected;
    for (const SynthPerson& person : truth.persons) {
      if (person.kind != PersonKind::kFaculty) continue;
      const auto it = spans.find(person.person_id);
      if (it == spans.end()) continue;
      ++candidates[person.university_id];
      const Span& s = it->second;
      if (s.in_window && s.last - s.first >= config.filters.min_age &&
          s.last >= config.filters.recency_year) {
        expected[person.university_id].insert(person.person_id);
      }
    }
    for (const auto& [u, n] : candidates) {
      if (n < config.filters.min_clusters) expected.erase(u);
    }

    std::map<std::string, const AuthorCluster*> cluster_by_id;
    for (const auto& c : clusters) cluster_by_id[c.cluster_id] = &c;
    std::map<std::string, std::set<std::string>> derived;
    bool impure = false;
    for (const auto& [u, units] : staff.by_university) {
      for (const StaffUnit& unit : units) {
        std::set<std::string> people;
        for (const auto& id : unit.cluster_ids) {
          for (const auto& ref : cluster_by_id.at(id)->mention_refs) {
            people.insert(truth.mention_person.at(ref));
          }
        }
        if (people.size() != 1) impure = true;
        for (const auto& p : people) {
          if (!derived[u].insert(p).second) impure = true;
        }
      }
    }
    const bool same = !impure && derived == expected;
    exact += same;
    size_t n_expected = 0;
    for (const auto& [u, s] : expected) n_expected += s.size();
    detail += fmt::format("{}seed {}: {} expected, {}", detail.empty() ? "" : "; ", seed,
                          n_expected, same ? "equal" : "DIFFERENT");
    fs::remove_all(out);
  }
  return {exact == 5, detail};
}

Outcome PropertyCriterion() {
  using namespace testing;
  const std::vector<std::pair<const char*, PropertyResult>> results = {
      {"fraction-sum", CheckFractionSum(201, kPropertyCases)},
      {"cell-mean", CheckCellMean(202, kPropertyCases)},
      {"citation-scaling", CheckScalingInvariance(203, kPropertyCases)},
      {"baseline-mean", CheckBaselineNormalizedMean(204, kPropertyCases)},
      {"partition", CheckClusteringPartition(205, kPropertyCases)},
      {"thread-determinism", CheckThreadDeterminism(206, kPropertyCases)},
      {"quartile-marginals", CheckQuartileMarginals()},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, r] : results) {
    const int needed = std::string(name) == "quartile-marginals" ? 400 : kPropertyCases;
    const bool pass = r.ok() && r.cases >= needed;
    ok &= pass;
    detail += fmt::format("{}{}={}/{}", detail.empty() ? "" : " ", name, r.cases - r.failures,
                          r.cases);
    if (!r.ok()) detail += " [" + r.first_failure + "]";
  }
  return {ok, detail};
}

Outcome DirectionalCriterion(const fs::path& scratch) {
  int pairs = 0;
  int below = 0;
  int seeds_majority = 0;
  std::vector<double> dx, dy;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const fs::path out = scratch / fmt::format("direction_{}", seed);
    const RunConfig config = SynthRun(
        out, seed, {{"non_faculty_share", "0.35"}, {"non_faculty_productivity_multiplier", "0.5"}});
    RunStages(config, {Subcommand::kSynth, Subcommand::kIngest, Subcommand::kDisambiguate,
                       Subcommand::kDeriveStaff, Subcommand::kScore, Subcommand::kCompare});
    std::ifstream in(ArtifactLayout(out).report_json());
    const nlohmann::json report = nlohmann::json::parse(in);
    int seed_pairs = 0, seed_below = 0;
    for (const auto& row : report["deviations"]["sc"]["rows"]) {
      ++seed_pairs;
      seed_below += row["mean_unsup"].get<double>() < row["mean_sup"].get<double>();
    }
    pairs += seed_pairs;
    below += seed_below;
    seeds_majority += 2 * seed_below > seed_pairs;
    for (const auto& row : report["deviations"]["university"]["rows"]) {
      if (row["delta_fss_u_pct"].is_null()) continue;
      dx.push_back(row["delta_obs_pct"].get<double>());
      dy.push_back(row["delta_fss_u_pct"].get<double>());
    }
    fs::remove_all(out);
  }
  const double fraction = pairs ? static_cast<double>(below) / pairs : 0.0;
  const std::optional<double> rho = Pearson(dx, dy);
  return {fraction >= kDirectionalFraction && rho && *rho < 0.0,
          fmt::format("unsupervised SC mean below supervised in {}/{} (seed, SC) pairs = {:.3f} "
                      "(need >= {}); seeds with a majority {}/20; pooled pearson(delta obs %, "
                      "delta FSS_U %) over {} universities = {:.3f} (need < 0)",
                      below, pairs, fraction, kDirectionalFraction, seeds_majority, dx.size(),
                      rho.value_or(NAN))};
}

}  // namespace
}  // namespace bibperf

// Arguments, if any, select criteria by number.
int main(int argc, char** argv) {
  using namespace bibperf;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  testing::ScratchDir scratch("acceptance");
  const std::vector<Criterion> criteria = {
      {1, "fixture quartile matrix", 1.0, QuartileMatrixCriterion},
      {2, "fixture two-quartile jumps", 1.0, RankJumpsCriterion},
      {3, "fixture overall correlations", 0.0, CorrelationCriterion},
      {4, "fixture percentile column", 0.0, PercentileCriterion},
      {5, "fixture top-rank stability", 0.0, TopRankCriterion},
      {6, "oracle equivalence", 10.0, [&] { return OracleCriterion(scratch.path()); }},
      {7, "clean-world staff recovery", 0.0, [&] { return CleanWorldCriterion(scratch.path()); }},
      {8, "property suites", 0.0, PropertyCriterion},
      {9, "directional distortion", 60.0, [&] { return DirectionalCriterion(scratch.path()); }},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0.0 || seconds < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    const std::string limit =
        c.time_limit_s > 0.0 ? fmt::format(" < {:.0f} s", c.time_limit_s) : std::string();
    fmt::print("{} [{}] {}: {} ({:.3f} s{}{})\n", pass ? "PASS" : "FAIL", c.id, c.name,
               outcome.detail, seconds, limit, in_time ? "" : ", TOO SLOW");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
