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

#include "bibperf/error.h"
#include "bibperf/synth.h"

namespace bibperf {
namespace {

// Mean citations of every publication of `year` listing `sc`.
double CellMean(const std::vector<PublicationRecord>& publications, int year,
                const std::string& sc) {
  double sum = 0.0;
  int n = 0;
  for (const PublicationRecord& pub : publications) {
    if (pub.year != year) continue;
    for (const std::string& s : pub.subject_categories) {
      if (s == sc) {
        sum += static_cast<double>(pub.citation_count);
        ++n;
      }
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

std::string AreaOf(const std::vector<SubjectCategory>& scheme, const std::string& sc) {
  for (const SubjectCategory& c : scheme) {
    if (c.sc_id == sc) return c.area_id;
  }
  throw Error("oracle: unknown SC " + sc);
}

}  // namespace

OracleScores ComputeOracleScores(const std::vector<OracleSubject>& subjects,
                                 const std::vector<PublicationRecord>& publications,
                                 const std::vector<SubjectCategory>& scheme,
                                 const YearRange& window) {
  OracleScores out;
  std::map<std::string, const PublicationRecord*> by_id;
  for (const PublicationRecord& pub : publications) by_id.emplace(pub.pub_id, &pub);
  const auto find_pub = [&](const std::string& id) -> const PublicationRecord* {
    const auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : it->second;
  };
  // Each cell mean is a full pass over the corpus, computed once.
  std::map<std::pair<int, std::string>, double> mean_cache;
  const auto cell_mean = [&](int year, const std::string& sc) {
    const auto it = mean_cache.find({year, sc});
    if (it != mean_cache.end()) return it->second;
    return mean_cache[{year, sc}] = CellMean(publications, year, sc);
  };
  for (const OracleSubject& s : subjects) {
    double sum = 0.0;
    for (const std::string& id : s.pub_ids) {
      const PublicationRecord* pub = find_pub(id);
      if (pub == nullptr || pub->year < window.first || pub->year > window.last) continue;
      double impact = 0.0;
      for (const std::string& sc : pub->subject_categories) {
        const double cbar = cell_mean(pub->year, sc);
        impact += cbar == 0.0 ? 0.0 : static_cast<double>(pub->citation_count) / cbar;
      }
      impact /= static_cast<double>(pub->subject_categories.size());
      sum += impact * (1.0 / static_cast<double>(pub->mentions.size()));
    }
    out.fss_r[s.subject_id] = sum / s.t;
  }

  for (const OracleSubject& s : subjects) {
    if (out.baseline.count(s.sc_id) > 0) continue;
    double sum = 0.0;
    int productive = 0;
    for (const OracleSubject& o : subjects) {
      if (o.sc_id == s.sc_id && out.fss_r[o.subject_id] > 0.0) {
        sum += out.fss_r[o.subject_id];
        ++productive;
      }
    }
    if (productive > 0) out.baseline[s.sc_id] = sum / productive;
  }

  // Researchers whose SC has no baseline are left out, as in the pipeline.
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<double, int>> acc;
  for (const OracleSubject& s : subjects) {
    const auto b = out.baseline.find(s.sc_id);
    if (b == out.baseline.end()) continue;
    const double scaled = out.fss_r[s.subject_id] / b->second;
    for (const auto& [level, key] :
         {std::pair<std::string, std::string>{"sc", s.sc_id},
          std::pair<std::string, std::string>{"area", AreaOf(scheme, s.sc_id)},
          std::pair<std::string, std::string>{"overall", "all"}}) {
      auto& a = acc[{s.university_id, level, key}];
      a.first += scaled;
      a.second += 1;
    }
  }
  for (const auto& [k, a] : acc) out.fss_u[k] = a.first / a.second;
  return out;
}

}  // namespace bibperf
