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

#include "bibperf/csv.h"
#include "bibperf/error.h"
#include "bibperf/fss.h"

namespace bibperf {

void WriteResearcherScores(std::ostream& out, const std::vector<ResearcherScore>& scores) {
  WriteCsvRow(out, {"subject_id", "mode", "sc", "t", "n", "fss_r"});
  for (const ResearcherScore& s : scores) {
    WriteCsvRow(out, {s.subject_id, std::string(ToString(s.mode)), s.sc_id,
                      fmt::format("{}", s.t), std::to_string(s.n_pubs),
                      fmt::format("{}", s.fss_r)});
  }
}

void WriteUniversityScores(std::ostream& out, const std::vector<UniversityScore>& scores) {
  WriteCsvRow(out, {"university_id", "level", "key", "rs_u", "fss_u"});
  for (const UniversityScore& s : scores) {
    WriteCsvRow(out, {s.university_id, std::string(ToString(s.level)), s.level_key,
                      std::to_string(s.rs_u), fmt::format("{}", s.fss_u)});
  }
}

void WriteExcludedScs(std::ostream& out, const std::vector<ExcludedSc>& excluded) {
  WriteCsvRow(out, {"sc_id", "reason", "obs_supervised", "obs_unsupervised"});
  for (const ExcludedSc& e : excluded) {
    WriteCsvRow(out, {e.sc_id, e.reason, std::to_string(e.obs_supervised),
                      std::to_string(e.obs_unsupervised)});
  }
}

std::vector<ResearcherScore> ParseResearcherScores(std::istream& in,
                                                   const std::string& source) {
  CsvReader reader(in, source);
  std::vector<ResearcherScore> out;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    ResearcherScore s;
    s.subject_id = Trim(reader.Require(row, "subject_id"));
    const auto mode = ParseMode(Trim(reader.Require(row, "mode")));
    if (!mode) {
      throw ParseError(source, reader.line(), "mode",
                       "expected supervised or unsupervised");
    }
    s.mode = *mode;
    s.sc_id = Trim(reader.Require(row, "sc"));
    s.t = reader.RequireDouble(row, "t");
    s.n_pubs = static_cast<int>(reader.RequireInt(row, "n"));
    s.fss_r = reader.RequireDouble(row, "fss_r");
    if (s.fss_r < 0.0) {
      throw ParseError(source, reader.line(), "fss_r", "must be non-negative");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<UniversityScore> ParseUniversityScores(std::istream& in,
                                                   const std::string& source) {
  CsvReader reader(in, source);
  std::vector<UniversityScore> out;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    UniversityScore s;
    s.university_id = Trim(reader.Require(row, "university_id"));
    const auto level = ParseLevel(Trim(reader.Require(row, "level")));
    if (!level) {
      throw ParseError(source, reader.line(), "level", "expected sc, area or overall");
    }
    s.level = *level;
    s.level_key = Trim(reader.Require(row, "key"));
    s.rs_u = static_cast<int>(reader.RequireInt(row, "rs_u"));
    s.fss_u = reader.RequireDouble(row, "fss_u");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ResearcherScore> LoadResearcherScores(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ParseResearcherScores(in, path.string());
}

std::vector<UniversityScore> LoadUniversityScores(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ParseUniversityScores(in, path.string());
}

}  // namespace bibperf
