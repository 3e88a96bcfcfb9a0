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

#ifndef BIBPERF_COMPARE_H_
#define BIBPERF_COMPARE_H_

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bibperf/fss.h"

namespace bibperf {

// Distortion analysis of a (supervised, unsupervised) score pair.

inline constexpr std::array<int, 9> kPercentileLevels = {1, 5, 10, 25, 50, 75, 90, 95, 99};

struct DistributionStats {
  int obs = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double variance = 0.0;  // sample variance (n - 1); 0 for a single value
  // Population-moment skewness m3/m2^1.5 and kurtosis m4/m2^2 (not excess);
  // empty when m2 = 0.
  std::optional<double> skewness;
  std::optional<double> kurtosis;
  std::array<double, 9> percentiles{};  // at kPercentileLevels
  double max = 0.0;
};

// Linear interpolation between closest ranks: h = (n - 1) p / 100, so p50 is
// the median. `sorted` must be ascending and non-empty.
double InterpolatedPercentile(const std::vector<double>& sorted, double p);

// Throws Error on an empty list.
DistributionStats ComputeDistributionStats(std::vector<double> values);

// One university's score in one mode.
struct ModeEntry {
  std::string university_id;
  int obs = 0;
  double fss_u = 0.0;
};

struct RankRow {
  std::string university_id;
  std::string name;
  int unsup_obs = 0;
  double unsup_fss_u = 0.0;
  int unsup_rank = 0;
  int unsup_perc = 0;
  int sup_obs = 0;
  double sup_fss_u = 0.0;
  int sup_rank = 0;
  int sup_perc = 0;
  int delta_rank = 0;  // sup_rank - unsup_rank; negative when unsupervised ranks lower
};

struct RankTable {
  std::vector<RankRow> rows;  // by university_id
};

// round_half_up(100 (n - rank) / (n - 1)) in exact integer arithmetic; 100
// when n == 1.
int PercentileForRank(int rank, int n);

// Q1 iff the unrounded percentile is >= 75, Q2 iff >= 50, Q3 iff >= 25,
// else Q4.
int AssignQuartile(int rank, int n);

// Ranks by descending fss_u; equal scores are ordered by university_id.
// Returned ranks follow the input order.
std::vector<int> RankDescending(const std::vector<ModeEntry>& entries);

// Throws Error listing every university present in only one mode, or on a
// duplicate id.
RankTable RankUniversities(const std::vector<ModeEntry>& unsupervised,
                           const std::vector<ModeEntry>& supervised,
                           const std::map<std::string, std::string>& names = {});

// Rows = unsupervised quartile, columns = supervised quartile.
using QuartileMatrix = std::array<std::array<int, 4>, 4>;

QuartileMatrix QuartileConfusion(const RankTable& table);

struct QuartileSummary {
  int diagonal = 0;
  int above = 0;  // better quartile in the unsupervised ranking
  int below = 0;
};

QuartileSummary SummarizeQuartiles(const QuartileMatrix& matrix);

struct RankJump {
  std::string university_id;
  int q_unsup = 0;
  int q_sup = 0;
};

struct RankJumpReport {
  int threshold = 2;
  int top_k = 11;
  std::vector<RankJump> jumps;  // by university_id
  int max_abs_delta = 0;
  int max_abs_delta_top_k = 0;  // among supervised ranks <= top_k
};

RankJumpReport RankJumps(const RankTable& table, int threshold = 2, int top_k = 11);

// Empty when either vector has zero variance or fewer than two values.
std::optional<double> Pearson(const std::vector<double>& x, const std::vector<double>& y);

// 1-based ascending ranks; ties share their average rank.
std::vector<double> AverageRanks(const std::vector<double>& values);

std::optional<double> Spearman(const std::vector<double>& x, const std::vector<double>& y);

struct GroupCorrelation {
  std::string group;
  int n = 0;
  std::optional<double> pearson;   // on fss_u
  std::optional<double> spearman;  // on rank columns
};

// Pearson on scores, Spearman on the two rank columns.
GroupCorrelation CorrelateTable(const std::string& group, const RankTable& table);

struct ScDeviation {
  std::string sc_id;
  int obs_sup = 0;
  int obs_unsup = 0;
  double mean_sup = 0.0;
  double mean_unsup = 0.0;
  double median_sup = 0.0;
  double median_unsup = 0.0;
  double delta_obs_pct = 0.0;
  std::optional<double> delta_mean_pct;    // empty when mean_sup = 0
  std::optional<double> delta_median_pct;  // empty when median_sup = 0
};

struct UniversityDeviation {
  std::string university_id;
  double delta_obs_pct = 0.0;
  std::optional<double> delta_fss_u_pct;  // empty when the supervised score is 0
  int delta_rank = 0;
};

struct CompareOptions {
  int jump_threshold = 2;
  int top_k = 11;
  int min_group_size = 3;
};

struct ComparisonReport {
  // Keyed by SC plus "all" for the pooled distribution.
  std::map<std::string, DistributionStats> stats_supervised;
  std::map<std::string, DistributionStats> stats_unsupervised;
  RankTable ranks;
  QuartileMatrix quartiles{};
  QuartileSummary quartile_summary;
  RankJumpReport jumps;
  GroupCorrelation overall;
  std::vector<GroupCorrelation> by_area;
  std::vector<ScDeviation> sc_deviations;
  std::optional<double> sc_obs_vs_mean;    // Pearson(delta_obs_pct, delta_mean_pct)
  std::optional<double> sc_obs_vs_median;  // Pearson(delta_obs_pct, delta_median_pct)
  std::vector<UniversityDeviation> university_deviations;
  std::optional<double> univ_obs_vs_fss_u;  // Pearson(delta_obs_pct, delta_fss_u_pct)
  std::optional<double> univ_obs_vs_rank;   // Pearson(delta_obs_pct, delta_rank)
  std::vector<std::string> warnings;
};

// Overall-level entries of one mode's university scores.
std::vector<ModeEntry> EntriesAtLevel(const std::vector<UniversityScore>& scores,
                                      Level level, const std::string& key);

// Full battery. Universities or area groups present in only one mode are
// left out with a warning; groups smaller than min_group_size are skipped
// with a warning.
ComparisonReport Compare(const std::vector<ResearcherScore>& supervised_researchers,
                         const std::vector<ResearcherScore>& unsupervised_researchers,
                         const std::vector<UniversityScore>& supervised_universities,
                         const std::vector<UniversityScore>& unsupervised_universities,
                         const CompareOptions& options = {},
                         const std::map<std::string, std::string>& names = {});

// rank_table.csv columns: university_id,name,unsup_obs,unsup_fss_u,unsup_rank,
// unsup_perc,sup_obs,sup_fss_u,sup_rank,sup_perc,delta_rank.
void WriteRankTable(std::ostream& out, const RankTable& table);
RankTable ParseRankTable(std::istream& in, const std::string& source);
RankTable LoadRankTable(const std::filesystem::path& path);

// Score columns of a parsed table, ready for RankUniversities.
std::vector<ModeEntry> UnsupervisedEntries(const RankTable& table);
std::vector<ModeEntry> SupervisedEntries(const RankTable& table);

void WriteQuartileMatrix(std::ostream& out, const QuartileMatrix& matrix);
// mode,sc,obs,mean,std_dev,variance,skewness,kurtosis,p1..p99,max
void WriteDistributionStats(std::ostream& out, const ComparisonReport& report);
void WriteReportJson(std::ostream& out, const ComparisonReport& report);

}  // namespace bibperf

#endif  // BIBPERF_COMPARE_H_
