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

#include <fmt/format.h>

#include "bibperf/compare.h"
#include "bibperf/csv.h"
#include "bibperf/error.h"
#include "json.hpp"

namespace bibperf {
namespace {

using nlohmann::ordered_json;

std::string Num(double v) { return fmt::format("{}", v); }

std::string Num(const std::optional<double>& v) { return v ? Num(*v) : std::string(); }

ordered_json Json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json Json(const DistributionStats& s) {
  ordered_json j;
  j["obs"] = s.obs;
  j["mean"] = s.mean;
  j["std_dev"] = s.std_dev;
  j["variance"] = s.variance;
  j["skewness"] = Json(s.skewness);
  j["kurtosis"] = Json(s.kurtosis);
  ordered_json p = ordered_json::object();
  for (size_t i = 0; i < kPercentileLevels.size(); ++i) {
    p[fmt::format("p{}", kPercentileLevels[i])] = s.percentiles[i];
  }
  j["percentiles"] = std::move(p);
  j["max"] = s.max;
  return j;
}

ordered_json Json(const GroupCorrelation& g) {
  return ordered_json{{"group", g.group},
                      {"n", g.n},
                      {"pearson", Json(g.pearson)},
                      {"spearman", Json(g.spearman)}};
}

const std::vector<std::string> kRankColumns = {
    "university_id", "name",     "unsup_obs", "unsup_fss_u", "unsup_rank", "unsup_perc",
    "sup_obs",       "sup_fss_u", "sup_rank", "sup_perc",    "delta_rank"};

}  // namespace

void WriteRankTable(std::ostream& out, const RankTable& table) {
  WriteCsvRow(out, kRankColumns);
  for (const RankRow& r : table.rows) {
    WriteCsvRow(out, {r.university_id, r.name, std::to_string(r.unsup_obs),
                      Num(r.unsup_fss_u), std::to_string(r.unsup_rank),
                      std::to_string(r.unsup_perc), std::to_string(r.sup_obs),
                      Num(r.sup_fss_u), std::to_string(r.sup_rank),
                      std::to_string(r.sup_perc), std::to_string(r.delta_rank)});
  }
}

RankTable ParseRankTable(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  RankTable table;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    RankRow r;
    r.university_id = Trim(reader.Require(row, "university_id"));
    if (const auto it = row.find("name"); it != row.end()) r.name = it->second;
    const auto as_int = [&](const char* field) {
      return static_cast<int>(reader.RequireInt(row, field));
    };
    r.unsup_obs = as_int("unsup_obs");
    r.unsup_fss_u = reader.RequireDouble(row, "unsup_fss_u");
    r.unsup_rank = as_int("unsup_rank");
    r.unsup_perc = as_int("unsup_perc");
    r.sup_obs = as_int("sup_obs");
    r.sup_fss_u = reader.RequireDouble(row, "sup_fss_u");
    r.sup_rank = as_int("sup_rank");
    r.sup_perc = as_int("sup_perc");
    r.delta_rank = as_int("delta_rank");
    table.rows.push_back(std::move(r));
  }
  return table;
}

RankTable LoadRankTable(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ParseRankTable(in, path.string());
}

void WriteQuartileMatrix(std::ostream& out, const QuartileMatrix& matrix) {
  WriteCsvRow(out, {"unsup_quartile", "sup_Q1", "sup_Q2", "sup_Q3", "sup_Q4"});
  for (int r = 0; r < 4; ++r) {
    std::vector<std::string> row = {fmt::format("Q{}", r + 1)};
    for (int c = 0; c < 4; ++c) row.push_back(std::to_string(matrix[r][c]));
    WriteCsvRow(out, row);
  }
}

void WriteDistributionStats(std::ostream& out, const ComparisonReport& report) {
  std::vector<std::string> header = {"mode", "sc", "obs", "mean", "std_dev",
                                     "variance", "skewness", "kurtosis"};
  for (const int p : kPercentileLevels) header.push_back(fmt::format("p{}", p));
  header.push_back("max");
  WriteCsvRow(out, header);
  const auto emit = [&](std::string_view mode,
                        const std::map<std::string, DistributionStats>& stats) {
    for (const auto& [sc, s] : stats) {
      std::vector<std::string> row = {std::string(mode), sc, std::to_string(s.obs),
                                      Num(s.mean), Num(s.std_dev), Num(s.variance),
                                      Num(s.skewness), Num(s.kurtosis)};
      for (const double p : s.percentiles) row.push_back(Num(p));
      row.push_back(Num(s.max));
      WriteCsvRow(out, row);
    }
  };
  emit("supervised", report.stats_supervised);
  emit("unsupervised", report.stats_unsupervised);
}

void WriteReportJson(std::ostream& out, const ComparisonReport& report) {
  ordered_json j;
  ordered_json stats;
  for (const auto& [mode, m] : {std::pair{"supervised", &report.stats_supervised},
                                std::pair{"unsupervised", &report.stats_unsupervised}}) {
    ordered_json per = ordered_json::object();
    for (const auto& [sc, s] : *m) per[sc] = Json(s);
    stats[mode] = std::move(per);
  }
  j["distribution_stats"] = std::move(stats);

  ordered_json ranks = ordered_json::array();
  for (const RankRow& r : report.ranks.rows) {
    ranks.push_back({{"university_id", r.university_id},
                     {"unsup_obs", r.unsup_obs},
                     {"unsup_fss_u", r.unsup_fss_u},
                     {"unsup_rank", r.unsup_rank},
                     {"unsup_perc", r.unsup_perc},
                     {"sup_obs", r.sup_obs},
                     {"sup_fss_u", r.sup_fss_u},
                     {"sup_rank", r.sup_rank},
                     {"sup_perc", r.sup_perc},
                     {"delta_rank", r.delta_rank}});
  }
  j["rank_table"] = std::move(ranks);

  ordered_json matrix = ordered_json::array();
  for (const auto& row : report.quartiles) matrix.push_back(row);
  j["quartile_matrix"] = {{"rows", "unsupervised"},
                          {"columns", "supervised"},
                          {"counts", std::move(matrix)},
                          {"diagonal", report.quartile_summary.diagonal},
                          {"above_diagonal", report.quartile_summary.above},
                          {"below_diagonal", report.quartile_summary.below}};

  ordered_json jumps = ordered_json::array();
  for (const RankJump& r : report.jumps.jumps) {
    jumps.push_back({{"university_id", r.university_id},
                     {"q_unsup", r.q_unsup},
                     {"q_sup", r.q_sup}});
  }
  j["rank_jumps"] = {{"threshold", report.jumps.threshold},
                     {"universities", std::move(jumps)},
                     {"max_abs_delta_rank", report.jumps.max_abs_delta},
                     {"top_k", report.jumps.top_k},
                     {"max_abs_delta_rank_top_k", report.jumps.max_abs_delta_top_k}};

  ordered_json areas = ordered_json::array();
  for (const GroupCorrelation& g : report.by_area) areas.push_back(Json(g));
  j["correlations"] = {{"overall", Json(report.overall)}, {"by_area", std::move(areas)}};

  ordered_json scs = ordered_json::array();
  for (const ScDeviation& d : report.sc_deviations) {
    scs.push_back({{"sc_id", d.sc_id},
                   {"obs_sup", d.obs_sup},
                   {"obs_unsup", d.obs_unsup},
                   {"mean_sup", d.mean_sup},
                   {"mean_unsup", d.mean_unsup},
                   {"median_sup", d.median_sup},
                   {"median_unsup", d.median_unsup},
                   {"delta_obs_pct", d.delta_obs_pct},
                   {"delta_mean_pct", Json(d.delta_mean_pct)},
                   {"delta_median_pct", Json(d.delta_median_pct)}});
  }
  ordered_json univs = ordered_json::array();
  for (const UniversityDeviation& d : report.university_deviations) {
    univs.push_back({{"university_id", d.university_id},
                     {"delta_obs_pct", d.delta_obs_pct},
                     {"delta_fss_u_pct", Json(d.delta_fss_u_pct)},
                     {"delta_rank", d.delta_rank}});
  }
  j["deviations"] = {
      {"sc", {{"rows", std::move(scs)},
              {"pearson_obs_vs_mean", Json(report.sc_obs_vs_mean)},
              {"pearson_obs_vs_median", Json(report.sc_obs_vs_median)}}},
      {"university", {{"rows", std::move(univs)},
                      {"pearson_obs_vs_fss_u", Json(report.univ_obs_vs_fss_u)},
                      {"pearson_obs_vs_delta_rank", Json(report.univ_obs_vs_rank)}}}};
  j["warnings"] = report.warnings;
  out << j.dump(2) << '\n';
}

}  // namespace bibperf
