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

#include "bibperf/compare.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bibperf/error.h"
#include "test_support.h"

namespace bibperf {
namespace {

TEST(DistributionStatsTest, ConstantVectorHasNoShape) {
  const DistributionStats s = ComputeDistributionStats({2.5, 2.5, 2.5});
  EXPECT_EQ(s.obs, 3);
  EXPECT_DOUBLE_EQ(s.std_dev, 0.0);
  EXPECT_FALSE(s.skewness);
  EXPECT_FALSE(s.kurtosis);
}

TEST(DistributionStatsTest, SymmetricThreePoints) {
  const DistributionStats s = ComputeDistributionStats({-1.0, 0.0, 1.0});
  ASSERT_TRUE(s.skewness && s.kurtosis);
  EXPECT_NEAR(*s.skewness, 0.0, 1e-15);
  EXPECT_NEAR(*s.kurtosis, 1.5, 1e-15);
}

TEST(DistributionStatsTest, HandComputedMoments) {
  // mean 4; deviations -3,-2,-1,0,6; m2 = 10, m3 = 36, m4 = 278.8.
  const DistributionStats s = ComputeDistributionStats({10, 1, 4, 3, 2});
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.variance, 12.5);
  EXPECT_NEAR(s.std_dev * s.std_dev, s.variance, 1e-12);
  EXPECT_NEAR(*s.skewness, 36.0 / std::pow(10.0, 1.5), 1e-12);
  EXPECT_NEAR(*s.kurtosis, 2.788, 1e-12);
  // Linear interpolation at h = (n - 1) p / 100 over {1,2,3,4,10}.
  EXPECT_DOUBLE_EQ(s.percentiles[3], 2.0);   // p25
  EXPECT_DOUBLE_EQ(s.percentiles[4], 3.0);   // p50
  EXPECT_NEAR(s.percentiles[6], 7.6, 1e-12);  // p90
  EXPECT_NEAR(s.percentiles[0], 1.04, 1e-12);  // p1
  EXPECT_DOUBLE_EQ(s.max, 10.0);
}

TEST(DistributionStatsTest, MedianOfEvenCount) {
  EXPECT_DOUBLE_EQ(ComputeDistributionStats({4, 1, 3, 2}).percentiles[4], 2.5);
}

TEST(DistributionStatsTest, EmptyIsAnError) {
  EXPECT_THROW(ComputeDistributionStats({}), Error);
}

TEST(PercentileForRankTest, Anchors) {
  EXPECT_EQ(PercentileForRank(1, 65), 100);
  EXPECT_EQ(PercentileForRank(65, 65), 0);
  EXPECT_EQ(PercentileForRank(5, 65), 94);
  EXPECT_EQ(PercentileForRank(9, 65), 88);
  EXPECT_EQ(PercentileForRank(33, 65), 50);
  EXPECT_EQ(PercentileForRank(1, 1), 100);
}

TEST(PercentileForRankTest, MatchesFloatingRoundHalfUp) {
  for (int n = 2; n <= 200; ++n) {
    for (int r = 1; r <= n; ++r) {
      const double exact = 100.0 * (n - r) / (n - 1);
      // Exact halves are representable, so floor(x + 0.5) is safe here.
      EXPECT_EQ(PercentileForRank(r, n), static_cast<int>(std::floor(exact + 0.5)))
          << r << "/" << n;
    }
  }
}

TEST(AssignQuartileTest, BoundariesAt65) {
  EXPECT_EQ(AssignQuartile(1, 65), 1);
  EXPECT_EQ(AssignQuartile(17, 65), 1);
  EXPECT_EQ(AssignQuartile(18, 65), 2);
  EXPECT_EQ(AssignQuartile(33, 65), 2);
  EXPECT_EQ(AssignQuartile(34, 65), 3);
  EXPECT_EQ(AssignQuartile(49, 65), 3);
  EXPECT_EQ(AssignQuartile(50, 65), 4);
  EXPECT_EQ(AssignQuartile(65, 65), 4);
}

TEST(RankDescendingTest, TiesGoToSmallerId) {
  const std::vector<ModeEntry> entries = {{"b", 1, 0.5}, {"a", 1, 0.5}, {"c", 1, 0.9}};
  EXPECT_EQ(RankDescending(entries), (std::vector<int>{3, 2, 1}));
}

TEST(RankUniversitiesTest, DeltaIsSupervisedMinusUnsupervised) {
  const RankTable t = RankUniversities({{"a", 10, 1.0}, {"b", 10, 2.0}, {"c", 10, 3.0}},
                                       {{"a", 5, 3.0}, {"b", 5, 2.0}, {"c", 5, 1.0}},
                                       {{"a", "Alpha"}});
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0].university_id, "a");
  EXPECT_EQ(t.rows[0].name, "Alpha");
  EXPECT_EQ(t.rows[0].unsup_rank, 3);
  EXPECT_EQ(t.rows[0].sup_rank, 1);
  EXPECT_EQ(t.rows[0].delta_rank, -2);
  EXPECT_EQ(t.rows[0].unsup_perc, 0);
  EXPECT_EQ(t.rows[0].sup_perc, 100);
}

TEST(RankUniversitiesTest, OneModeUniversitiesAreListed) {
  try {
    RankUniversities({{"a", 1, 1.0}, {"x", 1, 1.0}}, {{"a", 1, 1.0}, {"y", 1, 1.0}});
    FAIL() << "expected Error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("x"), std::string::npos);
    EXPECT_NE(what.find("y"), std::string::npos);
  }
  EXPECT_THROW(RankUniversities({{"a", 1, 1.0}, {"a", 1, 2.0}}, {{"a", 1, 1.0}}), Error);
}

RankTable Ladder(int n, bool reversed) {
  std::vector<ModeEntry> unsup, sup;
  for (int i = 0; i < n; ++i) {
    const std::string id = "u" + std::to_string(100 + i);
    unsup.push_back({id, 1, static_cast<double>(n - i)});
    sup.push_back({id, 1, static_cast<double>(reversed ? i : n - i)});
  }
  return RankUniversities(unsup, sup);
}

TEST(QuartileConfusionTest, IdenticalRankingsAreDiagonal) {
  const QuartileMatrix m = QuartileConfusion(Ladder(65, false));
  const QuartileMatrix expected = {{{17, 0, 0, 0}, {0, 16, 0, 0}, {0, 0, 16, 0}, {0, 0, 0, 16}}};
  EXPECT_EQ(m, expected);
  const QuartileSummary s = SummarizeQuartiles(m);
  EXPECT_EQ(s.diagonal, 65);
  EXPECT_EQ(s.above + s.below, 0);
}

TEST(QuartileConfusionTest, SummaryCountsSides) {
  const QuartileMatrix m = {{{1, 2, 0, 0}, {3, 4, 0, 5}, {0, 0, 6, 0}, {7, 0, 0, 8}}};
  const QuartileSummary s = SummarizeQuartiles(m);
  EXPECT_EQ(s.diagonal, 19);
  EXPECT_EQ(s.above, 7);
  EXPECT_EQ(s.below, 10);
}

TEST(RankJumpsTest, ReversedLadderMovesEndsThreeQuartiles) {
  const RankTable t = Ladder(8, true);
  const RankJumpReport r2 = RankJumps(t, 2, 3);
  const RankJumpReport r3 = RankJumps(t, 3, 3);
  // Quartiles by rank at n = 8: 1,1,2,2,3,3,4,4; reversal moves the ends by 3
  // and the middle by 1.
  EXPECT_EQ(r2.jumps.size(), 4u);
  EXPECT_EQ(r3.jumps.size(), 4u);
  EXPECT_TRUE(RankJumps(t, 4, 3).jumps.empty());
  EXPECT_EQ(r2.max_abs_delta, 7);
  EXPECT_EQ(r2.max_abs_delta_top_k, 7);
  EXPECT_EQ(RankJumps(Ladder(8, false), 1, 3).jumps.size(), 0u);
}

TEST(CorrelationTest, IdenticalAndReversed) {
  const std::vector<double> x = {1, 5, 2, 8, 3};
  std::vector<double> rev;
  for (double v : x) rev.push_back(-v);
  EXPECT_NEAR(*Pearson(x, x), 1.0, 1e-15);
  EXPECT_NEAR(*Spearman(x, x), 1.0, 1e-15);
  EXPECT_NEAR(*Spearman(x, rev), -1.0, 1e-15);
  EXPECT_FALSE(Pearson({1, 1, 1}, {1, 2, 3}));
  EXPECT_FALSE(Pearson({1}, {2}));
}

TEST(CorrelationTest, HandComputedPearson) {
  // x = 1..4, y = {2, 1, 4, 3}: sxy = 3, sxx = syy = 5.
  EXPECT_NEAR(*Pearson({1, 2, 3, 4}, {2, 1, 4, 3}), 0.6, 1e-15);
}

TEST(CorrelationTest, AverageRanksShareTies) {
  EXPECT_EQ(AverageRanks({10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(CorrelateTableTest, SpearmanFromDeltaRankIdentity) {
  const RankTable t = RankUniversities({{"a", 1, 5}, {"b", 1, 4}, {"c", 1, 3}, {"d", 1, 2},
                                        {"e", 1, 1}},
                                       {{"a", 1, 4}, {"b", 1, 5}, {"c", 1, 1}, {"d", 1, 3},
                                        {"e", 1, 2}});
  double d2 = 0;
  for (const auto& r : t.rows) d2 += static_cast<double>(r.delta_rank) * r.delta_rank;
  const double n = 5;
  const GroupCorrelation g = CorrelateTable("all", t);
  EXPECT_EQ(g.n, 5);
  EXPECT_NEAR(*g.spearman, 1.0 - 6.0 * d2 / (n * (n * n - 1)), 1e-12);
}

TEST(RankTableIoTest, FixtureRoundTrips) {
  const RankTable t = LoadRankTable(testing::DataPath("table4_fixture.csv"));
  ASSERT_EQ(t.rows.size(), 65u);
  std::ostringstream out;
  WriteRankTable(out, t);
  std::istringstream in(out.str());
  const RankTable again = ParseRankTable(in, "again");
  ASSERT_EQ(again.rows.size(), 65u);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(again.rows[i].university_id, t.rows[i].university_id);
    EXPECT_EQ(again.rows[i].name, t.rows[i].name);
    EXPECT_EQ(again.rows[i].sup_fss_u, t.rows[i].sup_fss_u);
    EXPECT_EQ(again.rows[i].delta_rank, t.rows[i].delta_rank);
  }
}

ResearcherScore R(const std::string& id, const std::string& u, const std::string& sc,
                  double fss, Mode mode) {
  ResearcherScore r;
  r.subject_id = id;
  r.university_id = u;
  r.sc_id = sc;
  r.fss_r = fss;
  r.mode = mode;
  r.t = 5;
  return r;
}

TEST(CompareTest, OneModeUniversityIsWarnedAndLeftOut) {
  std::vector<UniversityScore> sup, unsup;
  for (int i = 0; i < 4; ++i) {
    const std::string id = "U" + std::to_string(i);
    sup.push_back({id, Level::kOverall, "all", 10, 1.0 + i});
    unsup.push_back({id, Level::kOverall, "all", 12, 1.5 + i * 0.8});
  }
  unsup.push_back({"U9", Level::kOverall, "all", 3, 0.2});
  const std::vector<ResearcherScore> sup_r = {R("p1", "U0", "S01", 0.2, Mode::kSupervised),
                                              R("p2", "U1", "S01", 0.4, Mode::kSupervised)};
  const std::vector<ResearcherScore> unsup_r = {R("c1", "U0", "S01", 0.1, Mode::kUnsupervised),
                                                R("c2", "U1", "S01", 0.3, Mode::kUnsupervised),
                                                R("c3", "U9", "S01", 0.0, Mode::kUnsupervised)};
  const ComparisonReport report = Compare(sup_r, unsup_r, sup, unsup);
  EXPECT_EQ(report.ranks.rows.size(), 4u);
  bool warned = false;
  for (const auto& w : report.warnings) warned |= w.find("U9") != std::string::npos;
  EXPECT_TRUE(warned);
  EXPECT_EQ(report.stats_supervised.at("all").obs, 2);
  EXPECT_EQ(report.stats_unsupervised.at("S01").obs, 3);
  ASSERT_EQ(report.sc_deviations.size(), 1u);
  EXPECT_NEAR(report.sc_deviations[0].delta_obs_pct, 50.0, 1e-12);
  EXPECT_NEAR(*report.sc_deviations[0].delta_mean_pct, 100.0 * (0.4 / 3 - 0.3) / 0.3, 1e-9);
  std::ostringstream json;
  WriteReportJson(json, report);
  EXPECT_NE(json.str().find("\"quartile_matrix\""), std::string::npos);
}

}  // namespace
}  // namespace bibperf
