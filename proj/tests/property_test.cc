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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bibperf/compare.h"
#include "bibperf/fss.h"
#include "property_checks.h"

namespace bibperf::testing {
namespace {

constexpr int kCases = 1000;

void ExpectHolds(const PropertyResult& r, int min_cases = kCases) {
  EXPECT_GE(r.cases, min_cases);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}

TEST(FssPropertyTest, FractionalCountsSumToOne) { ExpectHolds(CheckFractionSum(101, kCases)); }

TEST(FssPropertyTest, CellMeanOfNormalizedCitationsIsOne) {
  ExpectHolds(CheckCellMean(102, kCases));
}

TEST(FssPropertyTest, CitationScalingWithinCellLeavesScoresUnchanged) {
  ExpectHolds(CheckScalingInvariance(103, kCases));
}

TEST(FssPropertyTest, BaselineNormalizedMeanIsOne) {
  ExpectHolds(CheckBaselineNormalizedMean(104, kCases));
}

TEST(FssPropertyTest, ModesShareOneScoringFormula) {
  std::mt19937_64 rng(105);
  for (int c = 0; c < kCases; ++c) {
    const Corpus corpus(RandomPublications(rng, {}));
    const CitationCells cells = BuildCitationCells(corpus);
    std::vector<std::string> ids;
    for (const auto& p : corpus.publications()) {
      if (Coin(rng, 0.5)) ids.push_back(p.pub_id);
    }
    const double t = Uniform(rng, 1, 5);
    const auto sup = ComputeFssR(SubjectOver("x", ids, t, Mode::kSupervised), "S01", corpus,
                                 {2015, 2019}, cells);
    const auto unsup = ComputeFssR(SubjectOver("x", ids, t, Mode::kUnsupervised), "S01",
                                   corpus, {2015, 2019}, cells);
    ASSERT_EQ(sup.fss_r, unsup.fss_r) << "case " << c;
  }
}

TEST(DisambigPropertyTest, ClusteringIsAPartition) {
  ExpectHolds(CheckClusteringPartition(106, kCases));
}

TEST(DisambigPropertyTest, ThreadCountDoesNotChangeResults) {
  ExpectHolds(CheckThreadDeterminism(107, kCases));
}

TEST(DisambigPropertyTest, RaisingThresholdNeverMergesMore) {
  ExpectHolds(CheckThresholdMonotonicity(108, kCases));
}

TEST(ComparePropertyTest, QuartileMarginalsAndMonotonicity) {
  ExpectHolds(CheckQuartileMarginals(), 400);
}

TEST(NormalizePropertyTest, Idempotent) { ExpectHolds(CheckNormalizeIdempotent(109, 5000), 5000); }

std::vector<ModeEntry> RandomEntries(std::mt19937_64& rng, int n) {
  std::vector<ModeEntry> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({"u" + std::to_string(100 + i), Uniform(rng, 1, 500),
                   std::lognormal_distribution<double>(0.0, 0.5)(rng)});
  }
  return out;
}

TEST(ComparePropertyTest, PercentilesSurviveOrderPreservingTransforms) {
  std::mt19937_64 rng(110);
  for (int c = 0; c < kCases; ++c) {
    const int n = Uniform(rng, 2, 80);
    const auto unsup = RandomEntries(rng, n);
    const auto sup = RandomEntries(rng, n);
    auto warped = sup;
    for (auto& e : warped) e.fss_u = std::log1p(e.fss_u) * 3.0 + 7.0;
    const RankTable a = RankUniversities(unsup, sup);
    const RankTable b = RankUniversities(unsup, warped);
    for (size_t i = 0; i < a.rows.size(); ++i) {
      ASSERT_EQ(a.rows[i].sup_perc, b.rows[i].sup_perc) << "case " << c;
      ASSERT_EQ(a.rows[i].sup_rank, b.rows[i].sup_rank) << "case " << c;
    }
  }
}

TEST(ComparePropertyTest, SwappingModesTransposesQuartileMatrix) {
  std::mt19937_64 rng(111);
  for (int c = 0; c < kCases; ++c) {
    const int n = Uniform(rng, 1, 90);
    const auto x = RandomEntries(rng, n);
    const auto y = RandomEntries(rng, n);
    const QuartileMatrix m = QuartileConfusion(RankUniversities(x, y));
    const QuartileMatrix t = QuartileConfusion(RankUniversities(y, x));
    int total = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        ASSERT_EQ(m[i][j], t[j][i]) << "case " << c;
        total += m[i][j];
      }
    }
    ASSERT_EQ(total, n);
  }
}

TEST(ComparePropertyTest, SpearmanFromDeltaRankMatchesRankColumns) {
  std::mt19937_64 rng(112);
  for (int c = 0; c < kCases; ++c) {
    const int n = Uniform(rng, 3, 120);
    const RankTable t = RankUniversities(RandomEntries(rng, n), RandomEntries(rng, n));
    double d2 = 0.0;
    for (const auto& row : t.rows) d2 += static_cast<double>(row.delta_rank) * row.delta_rank;
    const double nd = n;
    const double from_delta = 1.0 - 6.0 * d2 / (nd * (nd * nd - 1.0));
    ASSERT_NEAR(*CorrelateTable("all", t).spearman, from_delta, 1e-12) << "case " << c;
  }
}

TEST(ComparePropertyTest, DistributionStatsInvariants) {
  std::mt19937_64 rng(113);
  for (int c = 0; c < kCases; ++c) {
    std::vector<double> values(Uniform(rng, 1, 200));
    for (auto& v : values) v = Coin(rng, 0.2) ? 0.0 : std::lognormal_distribution<double>(0, 1)(rng);
    const DistributionStats s = ComputeDistributionStats(values);
    ASSERT_NEAR(s.std_dev * s.std_dev, s.variance, 1e-12 * std::max(1.0, s.variance));
    ASSERT_TRUE(std::is_sorted(s.percentiles.begin(), s.percentiles.end())) << "case " << c;
    ASSERT_GE(s.max, s.percentiles.back());
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    const double median =
        n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    ASSERT_NEAR(s.percentiles[4], median, 1e-12) << "case " << c;
  }
}

}  // namespace
}  // namespace bibperf::testing
