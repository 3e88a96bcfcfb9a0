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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "bibperf/error.h"

namespace bibperf {

double InterpolatedPercentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error("percentile of an empty list");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p / 100.0;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionStats ComputeDistributionStats(std::vector<double> values) {
  if (values.empty()) throw Error("distribution statistics of an empty list");
  std::sort(values.begin(), values.end());
  DistributionStats s;
  const double n = static_cast<double>(values.size());
  s.obs = static_cast<int>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (const double v : values) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  s.variance = values.size() > 1 ? m2 / (n - 1.0) : 0.0;
  s.std_dev = std::sqrt(s.variance);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  for (size_t i = 0; i < kPercentileLevels.size(); ++i) {
    s.percentiles[i] = InterpolatedPercentile(values, kPercentileLevels[i]);
  }
  s.max = values.back();
  return s;
}

int PercentileForRank(int rank, int n) {
  if (n < 1 || rank < 1 || rank > n) {
    throw Error(fmt::format("rank {} outside 1..{}", rank, n));
  }
  if (n == 1) return 100;
  const long long num = 200LL * (n - rank) + (n - 1);
  return static_cast<int>(num / (2LL * (n - 1)));
}

int AssignQuartile(int rank, int n) {
  if (n < 1 || rank < 1 || rank > n) {
    throw Error(fmt::format("rank {} outside 1..{}", rank, n));
  }
  const long long above = n - rank;  // percentile = 100 * above / (n - 1)
  const long long span = n - 1;
  if (4 * above >= 3 * span) return 1;
  if (2 * above >= span) return 2;
  if (4 * above >= span) return 3;
  return 4;
}

std::vector<int> RankDescending(const std::vector<ModeEntry>& entries) {
  std::vector<size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (entries[a].fss_u != entries[b].fss_u) return entries[a].fss_u > entries[b].fss_u;
    return entries[a].university_id < entries[b].university_id;
  });
  std::vector<int> ranks(entries.size());
  for (size_t i = 0; i < order.size(); ++i) ranks[order[i]] = static_cast<int>(i) + 1;
  return ranks;
}

namespace {

std::map<std::string, size_t> IndexEntries(const std::vector<ModeEntry>& entries,
                                           std::string_view mode) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!index.emplace(entries[i].university_id, i).second) {
      throw Error(fmt::format("university {} appears twice in the {} scores",
                              entries[i].university_id, mode));
    }
  }
  return index;
}

}  // namespace

RankTable RankUniversities(const std::vector<ModeEntry>& unsupervised,
                           const std::vector<ModeEntry>& supervised,
                           const std::map<std::string, std::string>& names) {
  const auto unsup_index = IndexEntries(unsupervised, "unsupervised");
  const auto sup_index = IndexEntries(supervised, "supervised");
  std::vector<std::string> only_one;
  for (const auto& [id, i] : unsup_index) {
    if (sup_index.count(id) == 0) only_one.push_back(id + " (unsupervised only)");
  }
  for (const auto& [id, i] : sup_index) {
    if (unsup_index.count(id) == 0) only_one.push_back(id + " (supervised only)");
  }
  if (!only_one.empty()) {
    throw Error(fmt::format("universities scored in one mode only: {}",
                            fmt::join(only_one, ", ")));
  }
  const std::vector<int> unsup_ranks = RankDescending(unsupervised);
  const std::vector<int> sup_ranks = RankDescending(supervised);
  const int n = static_cast<int>(unsupervised.size());
  RankTable table;
  for (const auto& [id, ui] : unsup_index) {
    const size_t si = sup_index.at(id);
    RankRow row;
    row.university_id = id;
    if (const auto it = names.find(id); it != names.end()) row.name = it->second;
    row.unsup_obs = unsupervised[ui].obs;
    row.unsup_fss_u = unsupervised[ui].fss_u;
    row.unsup_rank = unsup_ranks[ui];
    row.unsup_perc = PercentileForRank(row.unsup_rank, n);
    row.sup_obs = supervised[si].obs;
    row.sup_fss_u = supervised[si].fss_u;
    row.sup_rank = sup_ranks[si];
    row.sup_perc = PercentileForRank(row.sup_rank, n);
    row.delta_rank = row.sup_rank - row.unsup_rank;
    table.rows.push_back(std::move(row));
  }
  return table;
}

QuartileMatrix QuartileConfusion(const RankTable& table) {
  QuartileMatrix m{};
  const int n = static_cast<int>(table.rows.size());
  for (const RankRow& row : table.rows) {
    ++m[AssignQuartile(row.unsup_rank, n) - 1][AssignQuartile(row.sup_rank, n) - 1];
  }
  return m;
}

QuartileSummary SummarizeQuartiles(const QuartileMatrix& matrix) {
  QuartileSummary s;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r == c) {
        s.diagonal += matrix[r][c];
      } else if (c > r) {
        s.above += matrix[r][c];
      } else {
        s.below += matrix[r][c];
      }
    }
  }
  return s;
}

RankJumpReport RankJumps(const RankTable& table, int threshold, int top_k) {
  RankJumpReport report;
  report.threshold = threshold;
  report.top_k = top_k;
  const int n = static_cast<int>(table.rows.size());
  for (const RankRow& row : table.rows) {
    const int q_unsup = AssignQuartile(row.unsup_rank, n);
    const int q_sup = AssignQuartile(row.sup_rank, n);
    if (std::abs(q_unsup - q_sup) >= threshold) {
      report.jumps.push_back(RankJump{row.university_id, q_unsup, q_sup});
    }
    const int d = std::abs(row.delta_rank);
    report.max_abs_delta = std::max(report.max_abs_delta, d);
    if (row.sup_rank <= top_k) {
      report.max_abs_delta_top_k = std::max(report.max_abs_delta_top_k, d);
    }
  }
  return report;
}

std::optional<double> Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("Pearson inputs differ in length");
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return Pearson(AverageRanks(x), AverageRanks(y));
}

GroupCorrelation CorrelateTable(const std::string& group, const RankTable& table) {
  GroupCorrelation g;
  g.group = group;
  g.n = static_cast<int>(table.rows.size());
  std::vector<double> su, ss, ru, rs;
  for (const RankRow& row : table.rows) {
    su.push_back(row.unsup_fss_u);
    ss.push_back(row.sup_fss_u);
    ru.push_back(row.unsup_rank);
    rs.push_back(row.sup_rank);
  }
  g.pearson = Pearson(su, ss);
  g.spearman = Spearman(ru, rs);
  return g;
}

std::vector<ModeEntry> EntriesAtLevel(const std::vector<UniversityScore>& scores,
                                      Level level, const std::string& key) {
  std::vector<ModeEntry> out;
  for (const UniversityScore& s : scores) {
    if (s.level == level && s.level_key == key) {
      out.push_back(ModeEntry{s.university_id, s.rs_u, s.fss_u});
    }
  }
  return out;
}

namespace {

// Restricts both lists to their shared universities; returns the ids dropped.
std::vector<std::string> Intersect(std::vector<ModeEntry>* a, std::vector<ModeEntry>* b) {
  std::set<std::string> ids_a, ids_b;
  for (const ModeEntry& e : *a) ids_a.insert(e.university_id);
  for (const ModeEntry& e : *b) ids_b.insert(e.university_id);
  std::vector<std::string> dropped;
  std::set_symmetric_difference(ids_a.begin(), ids_a.end(), ids_b.begin(), ids_b.end(),
                                std::back_inserter(dropped));
  const std::set<std::string> drop(dropped.begin(), dropped.end());
  std::erase_if(*a, [&](const ModeEntry& e) { return drop.count(e.university_id) > 0; });
  std::erase_if(*b, [&](const ModeEntry& e) { return drop.count(e.university_id) > 0; });
  return dropped;
}

std::map<std::string, DistributionStats> StatsBySc(
    const std::vector<ResearcherScore>& scores) {
  std::map<std::string, std::vector<double>> values;
  for (const ResearcherScore& s : scores) {
    values[s.sc_id].push_back(s.fss_r);
    values["all"].push_back(s.fss_r);
  }
  std::map<std::string, DistributionStats> out;
  for (auto& [sc, v] : values) out.emplace(sc, ComputeDistributionStats(std::move(v)));
  return out;
}

std::optional<double> PercentChange(double from, double to) {
  if (from == 0.0) return std::nullopt;
  return 100.0 * (to - from) / from;
}

// Pearson over the rows where `y` is set.
template <typename Row, typename Y>
std::optional<double> PearsonWhereSet(const std::vector<Row>& rows, Y y) {
  std::vector<double> xs, ys;
  for (const Row& row : rows) {
    const std::optional<double> v = y(row);
    if (!v) continue;
    xs.push_back(row.delta_obs_pct);
    ys.push_back(*v);
  }
  return Pearson(xs, ys);
}

}  // namespace

ComparisonReport Compare(const std::vector<ResearcherScore>& supervised_researchers,
                         const std::vector<ResearcherScore>& unsupervised_researchers,
                         const std::vector<UniversityScore>& supervised_universities,
                         const std::vector<UniversityScore>& unsupervised_universities,
                         const CompareOptions& options,
                         const std::map<std::string, std::string>& names) {
  ComparisonReport report;
  if (!supervised_researchers.empty()) {
    report.stats_supervised = StatsBySc(supervised_researchers);
  }
  if (!unsupervised_researchers.empty()) {
    report.stats_unsupervised = StatsBySc(unsupervised_researchers);
  }

  std::vector<ModeEntry> unsup = EntriesAtLevel(unsupervised_universities, Level::kOverall, "all");
  std::vector<ModeEntry> sup = EntriesAtLevel(supervised_universities, Level::kOverall, "all");
  for (const std::string& id : Intersect(&unsup, &sup)) {
    report.warnings.push_back(fmt::format("university {} scored in one mode only; left out", id));
  }
  report.ranks = RankUniversities(unsup, sup, names);
  report.quartiles = QuartileConfusion(report.ranks);
  report.quartile_summary = SummarizeQuartiles(report.quartiles);
  report.jumps = RankJumps(report.ranks, options.jump_threshold, options.top_k);
  report.overall = CorrelateTable("overall", report.ranks);

  std::set<std::string> areas;
  for (const UniversityScore& s : supervised_universities) {
    if (s.level == Level::kArea) areas.insert(s.level_key);
  }
  for (const UniversityScore& s : unsupervised_universities) {
    if (s.level == Level::kArea) areas.insert(s.level_key);
  }
  for (const std::string& area : areas) {
    std::vector<ModeEntry> au = EntriesAtLevel(unsupervised_universities, Level::kArea, area);
    std::vector<ModeEntry> as = EntriesAtLevel(supervised_universities, Level::kArea, area);
    Intersect(&au, &as);
    if (static_cast<int>(au.size()) < options.min_group_size) {
      report.warnings.push_back(fmt::format(
          "area {} has {} paired universities (< {}); skipped", area, au.size(),
          options.min_group_size));
      continue;
    }
    report.by_area.push_back(CorrelateTable(area, RankUniversities(au, as)));
  }

  for (const auto& [sc, st_sup] : report.stats_supervised) {
    if (sc == "all") continue;
    const auto it = report.stats_unsupervised.find(sc);
    if (it == report.stats_unsupervised.end()) continue;
    const DistributionStats& st_unsup = it->second;
    ScDeviation d;
    d.sc_id = sc;
    d.obs_sup = st_sup.obs;
    d.obs_unsup = st_unsup.obs;
    d.mean_sup = st_sup.mean;
    d.mean_unsup = st_unsup.mean;
    d.median_sup = st_sup.percentiles[4];
    d.median_unsup = st_unsup.percentiles[4];
    d.delta_obs_pct = *PercentChange(d.obs_sup, d.obs_unsup);
    d.delta_mean_pct = PercentChange(d.mean_sup, d.mean_unsup);
    d.delta_median_pct = PercentChange(d.median_sup, d.median_unsup);
    report.sc_deviations.push_back(std::move(d));
  }
  report.sc_obs_vs_mean = PearsonWhereSet(
      report.sc_deviations, [](const ScDeviation& d) { return d.delta_mean_pct; });
  report.sc_obs_vs_median = PearsonWhereSet(
      report.sc_deviations, [](const ScDeviation& d) { return d.delta_median_pct; });

  for (const RankRow& row : report.ranks.rows) {
    if (row.sup_obs == 0) continue;
    UniversityDeviation d;
    d.university_id = row.university_id;
    d.delta_obs_pct = *PercentChange(row.sup_obs, row.unsup_obs);
    d.delta_fss_u_pct = PercentChange(row.sup_fss_u, row.unsup_fss_u);
    d.delta_rank = row.delta_rank;
    report.university_deviations.push_back(std::move(d));
  }
  report.univ_obs_vs_fss_u =
      PearsonWhereSet(report.university_deviations,
                      [](const UniversityDeviation& d) { return d.delta_fss_u_pct; });
  report.univ_obs_vs_rank = PearsonWhereSet(
      report.university_deviations, [](const UniversityDeviation& d) -> std::optional<double> {
        return d.delta_rank;
      });
  return report;
}

std::vector<ModeEntry> UnsupervisedEntries(const RankTable& table) {
  std::vector<ModeEntry> out;
  for (const RankRow& row : table.rows) {
    out.push_back(ModeEntry{row.university_id, row.unsup_obs, row.unsup_fss_u});
  }
  return out;
}

std::vector<ModeEntry> SupervisedEntries(const RankTable& table) {
  std::vector<ModeEntry> out;
  for (const RankRow& row : table.rows) {
    out.push_back(ModeEntry{row.university_id, row.sup_obs, row.sup_fss_u});
  }
  return out;
}

}  // namespace bibperf
