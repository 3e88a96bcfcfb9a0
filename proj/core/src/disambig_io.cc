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

#include <fstream>

#include <fmt/format.h>

#include "bibperf/csv.h"
#include "bibperf/disambig.h"
#include "bibperf/error.h"
#include "json.hpp"

namespace bibperf {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double ParseWeight(const std::string& key, const std::string& value,
                   const std::string& source) {
  try {
    size_t used = 0;
    const double w = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return w;
  } catch (const std::exception&) {
    throw ValidationError(source + ": '" + key + "' expects a number, got '" +
                          value + "'");
  }
}

std::optional<std::string> OptionalField(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

ordered_json OptionalValue(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ScoringRules ParseScoringRules(std::istream& in, const std::string& source) {
  ScoringRules rules;
  const std::map<std::string, double*> weights = {
      {"orcid", &rules.orcid},
      {"researcher_id", &rules.researcher_id},
      {"email", &rules.email},
      {"coauthor", &rules.coauthor},
      {"organization", &rules.organization},
      {"journal", &rules.journal},
      {"subject_category", &rules.subject_category},
      {"first_name", &rules.first_name},
      {"merge_threshold", &rules.merge_threshold},
  };
  for (const auto& [key, value] : ParseKeyValue(in, source)) {
    if (const auto it = weights.find(key); it != weights.end()) {
      *it->second = ParseWeight(key, value, source);
    } else if (key == "hard_conflicts") {
      rules.orcid_conflict = false;
      rules.researcher_id_conflict = false;
      for (const auto& kind : SplitList(value, ',')) {
        if (kind == "orcid") {
          rules.orcid_conflict = true;
        } else if (kind == "researcher_id") {
          rules.researcher_id_conflict = true;
        } else {
          throw ValidationError(source + ": unknown hard conflict kind '" + kind + "'");
        }
      }
    } else {
      throw ValidationError(source + ": unknown rule '" + key + "'");
    }
  }
  rules.Validate();
  return rules;
}

ScoringRules LoadScoringRules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ParseScoringRules(in, path.string());
}

void WriteScoringRules(std::ostream& out, const ScoringRules& rules) {
  out << fmt::format("orcid = {}\n", rules.orcid)
      << fmt::format("researcher_id = {}\n", rules.researcher_id)
      << fmt::format("email = {}\n", rules.email)
      << fmt::format("coauthor = {}\n", rules.coauthor)
      << fmt::format("organization = {}\n", rules.organization)
      << fmt::format("journal = {}\n", rules.journal)
      << fmt::format("subject_category = {}\n", rules.subject_category)
      << fmt::format("first_name = {}\n", rules.first_name)
      << fmt::format("merge_threshold = {}\n", rules.merge_threshold);
  std::vector<std::string> kinds;
  if (rules.orcid_conflict) kinds.push_back("orcid");
  if (rules.researcher_id_conflict) kinds.push_back("researcher_id");
  out << "hard_conflicts = " << JoinList(kinds, ',') << '\n';
}

void WriteClusters(std::ostream& out, const std::vector<AuthorCluster>& clusters) {
  for (const auto& c : clusters) {
    ordered_json obj;
    obj["cluster_id"] = c.cluster_id;
    obj["n_pubs"] = c.n_pubs;
    obj["first_year"] = c.first_year;
    obj["last_year"] = c.last_year;
    obj["academic_age"] = c.academic_age;
    obj["full_name"] = c.full_name;
    obj["last_name"] = c.last_name;
    obj["first_name"] = c.first_name;
    obj["email"] = OptionalValue(c.email);
    obj["organization"] = OptionalValue(c.organization);
    obj["city"] = OptionalValue(c.city);
    obj["country"] = OptionalValue(c.country);
    obj["orcid"] = OptionalValue(c.orcid);
    obj["researcherid"] = OptionalValue(c.researcher_id);
    ordered_json refs = ordered_json::array();
    for (const auto& r : c.mention_refs) refs.push_back({r.pub_id, r.position});
    obj["mentions"] = std::move(refs);
    out << obj.dump() << '\n';
  }
}

std::vector<AuthorCluster> ParseClusters(std::istream& in, const std::string& source) {
  std::vector<AuthorCluster> clusters;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json obj = json::parse(line);
      AuthorCluster c;
      c.cluster_id = obj.at("cluster_id").get<std::string>();
      c.n_pubs = obj.at("n_pubs").get<int>();
      c.first_year = obj.at("first_year").get<int>();
      c.last_year = obj.at("last_year").get<int>();
      c.academic_age = obj.at("academic_age").get<int>();
      c.full_name = obj.at("full_name").get<std::string>();
      c.last_name = obj.at("last_name").get<std::string>();
      c.first_name = obj.at("first_name").get<std::string>();
      c.email = OptionalField(obj, "email");
      c.organization = OptionalField(obj, "organization");
      c.city = OptionalField(obj, "city");
      c.country = OptionalField(obj, "country");
      c.orcid = OptionalField(obj, "orcid");
      c.researcher_id = OptionalField(obj, "researcherid");
      for (const auto& r : obj.at("mentions")) {
        c.mention_refs.push_back({r.at(0).get<std::string>(), r.at(1).get<int>()});
      }
      clusters.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, "<json>", e.what());
    }
  }
  return clusters;
}

std::vector<AuthorCluster> LoadClusters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ParseClusters(in, path.string());
}

}  // namespace bibperf
