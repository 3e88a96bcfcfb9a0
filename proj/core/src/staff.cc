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

#include "bibperf/staff.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "bibperf/csv.h"
#include "bibperf/error.h"

namespace bibperf {
namespace {

std::map<std::string, const AuthorCluster*> IndexClusters(
    const std::vector<AuthorCluster>& clusters) {
  std::map<std::string, const AuthorCluster*> index;
  for (const auto& c : clusters) index.emplace(c.cluster_id, &c);
  return index;
}

int DistinctPubs(const std::vector<std::string>& cluster_ids,
                 const std::map<std::string, const AuthorCluster*>& index) {
  std::set<std::string> pubs;
  for (const auto& id : cluster_ids) {
    const auto it = index.find(id);
    if (it == index.end()) throw Error("unknown cluster_id '" + id + "'");
    for (const auto& ref : it->second->mention_refs) pubs.insert(ref.pub_id);
  }
  return static_cast<int>(pubs.size());
}

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

std::string_view ToString(Evidence evidence) {
  switch (evidence) {
    case Evidence::kOrganization: return "organization";
    case Evidence::kEmail: return "email";
    case Evidence::kBoth: return "both";
  }
  return "organization";
}

std::optional<Evidence> ParseEvidence(std::string_view text) {
  for (Evidence e : {Evidence::kOrganization, Evidence::kEmail, Evidence::kBoth}) {
    if (ToString(e) == text) return e;
  }
  return std::nullopt;
}

std::string_view ToString(StaffFlag flag) {
  switch (flag) {
    case StaffFlag::kIncoherentOrg: return "incoherent_org";
    case StaffFlag::kNonUniversityEmail: return "non_university_email";
    case StaffFlag::kEmailOrgConflict: return "email_org_conflict";
    case StaffFlag::kOrcidConflict: return "orcid_conflict";
    case StaffFlag::kEmailConflict: return "email_conflict";
    case StaffFlag::kBelowAge: return "below_age";
    case StaffFlag::kStale: return "stale";
    case StaffFlag::kExcludedSmallUniversity: return "excluded_small_university";
  }
  return "";
}

std::string FormatFlags(const FlagSet& flags) {
  std::vector<std::string> names;
  for (StaffFlag f : flags) names.emplace_back(ToString(f));
  return JoinList(names);
}

size_t DerivedStaff::unit_count() const {
  size_t n = 0;
  for (const auto& [u, units] : by_university) n += units.size();
  return n;
}

std::optional<UniversityMatch> MatchUniversity(const AuthorCluster& cluster,
                                               const UniversityRegistry& registry) {
  UniversityMatch match;
  if (cluster.organization) {
    match.organization_university = registry.MatchOrganization(*cluster.organization);
  }
  if (cluster.email) match.email_university = registry.MatchEmail(*cluster.email);
  if (match.email_university) {
    match.university_id = *match.email_university;
    match.evidence = match.organization_university == match.email_university
                         ? Evidence::kBoth
                         : Evidence::kEmail;
    return match;
  }
  if (match.organization_university) {
    match.university_id = *match.organization_university;
    match.evidence = Evidence::kOrganization;
    return match;
  }
  return std::nullopt;
}

FlagSet CoherenceCheck(const AuthorCluster& cluster,
                       const UniversityRegistry& registry) {
  FlagSet flags;
  std::optional<std::string> org_university;
  std::optional<std::string> email_university;
  if (cluster.organization) {
    org_university = registry.MatchOrganization(*cluster.organization);
    if (!org_university) flags.insert(StaffFlag::kIncoherentOrg);
  }
  if (cluster.email) {
    email_university = registry.MatchEmail(*cluster.email);
    if (!email_university) flags.insert(StaffFlag::kNonUniversityEmail);
  }
  if (org_university && email_university && *org_university != *email_university) {
    flags.insert(StaffFlag::kEmailOrgConflict);
  }
  return flags;
}

std::vector<StaffCandidate> MatchCandidates(const std::vector<AuthorCluster>& clusters,
                                            const UniversityRegistry& registry) {
  std::vector<StaffCandidate> candidates;
  for (const auto& c : clusters) {
    const auto match = MatchUniversity(c, registry);
    if (!match) continue;
    StaffCandidate cand;
    cand.cluster_id = c.cluster_id;
    cand.university_id = match->university_id;
    cand.evidence = match->evidence;
    cand.flags = CoherenceCheck(c, registry);
    if (cand.flags.contains(StaffFlag::kIncoherentOrg)) {
      cand.details = "organization '" + c.organization.value_or("") +
                     "' is not a university variant";
    } else if (cand.flags.contains(StaffFlag::kNonUniversityEmail)) {
      cand.details = "email '" + c.email.value_or("") + "' is not a university domain";
    } else if (cand.flags.contains(StaffFlag::kEmailOrgConflict)) {
      cand.details = "organization names " + match->organization_university.value_or("") +
                     ", email names " + match->email_university.value_or("");
    }
    cand.n_pubs = c.n_pubs;
    cand.academic_age = c.academic_age;
    cand.last_year = c.last_year;
    cand.orcid = c.orcid;
    cand.email = c.email;
    candidates.push_back(std::move(cand));
  }
  return candidates;
}

std::vector<StaffCandidate> ApplyFilters(std::vector<StaffCandidate> candidates,
                                         const FilterParams& params) {
  std::map<std::string, int> per_university;
  for (const auto& c : candidates) ++per_university[c.university_id];
  for (auto& c : candidates) {
    if (c.academic_age < params.min_age) c.flags.insert(StaffFlag::kBelowAge);
    if (c.last_year < params.recency_year) c.flags.insert(StaffFlag::kStale);
    if (per_university[c.university_id] < params.min_clusters) {
      c.flags.insert(StaffFlag::kExcludedSmallUniversity);
    }
  }
  return candidates;
}

DerivedStaff ResolveConflicts(const std::vector<StaffCandidate>& candidates,
                              const std::vector<AuthorCluster>& clusters) {
  const auto index = IndexClusters(clusters);
  DerivedStaff staff;

  std::vector<StaffCandidate> accepted;
  for (const auto& c : candidates) {
    if (c.accepted()) {
      accepted.push_back(c);
    } else {
      staff.review_queue.push_back(c);
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const StaffCandidate& a, const StaffCandidate& b) {
              return a.cluster_id < b.cluster_id;
            });

  UnionFind uf(accepted.size());
  std::unordered_map<std::string, size_t> first_orcid, first_email;
  for (size_t i = 0; i < accepted.size(); ++i) {
    if (accepted[i].orcid) {
      const auto [it, inserted] = first_orcid.emplace(*accepted[i].orcid, i);
      if (!inserted) uf.Union(it->second, i);
    }
    if (accepted[i].email) {
      const auto [it, inserted] = first_email.emplace(*accepted[i].email, i);
      if (!inserted) uf.Union(it->second, i);
    }
  }
  std::map<size_t, std::vector<size_t>> components;
  for (size_t i = 0; i < accepted.size(); ++i) components[uf.Find(i)].push_back(i);

  for (const auto& [root, members] : components) {
    size_t winner = members.front();
    for (size_t m : members) {
      if (accepted[m].n_pubs > accepted[winner].n_pubs) winner = m;
    }
    const StaffCandidate& win = accepted[winner];
    StaffUnit unit;
    unit.university_id = win.university_id;
    unit.evidence = win.evidence;
    for (size_t m : members) {
      StaffCandidate c = accepted[m];
      if (c.university_id == win.university_id) {
        unit.cluster_ids.push_back(c.cluster_id);
        continue;
      }
      bool shares_orcid = false;
      for (size_t other : members) {
        if (other != m && c.orcid && accepted[other].orcid == c.orcid) shares_orcid = true;
      }
      c.flags.insert(shares_orcid ? StaffFlag::kOrcidConflict : StaffFlag::kEmailConflict);
      c.details = std::string(shares_orcid ? "orcid" : "email") + " shared with " +
                  win.cluster_id + " kept at " + win.university_id;
      staff.review_queue.push_back(std::move(c));
    }
    unit.unit_id = unit.cluster_ids.front();
    unit.n_pubs = DistinctPubs(unit.cluster_ids, index);
    staff.by_university[unit.university_id].push_back(std::move(unit));
  }
  for (auto& [u, units] : staff.by_university) {
    std::sort(units.begin(), units.end(), [](const StaffUnit& a, const StaffUnit& b) {
      return a.unit_id < b.unit_id;
    });
  }
  std::sort(staff.review_queue.begin(), staff.review_queue.end(),
            [](const StaffCandidate& a, const StaffCandidate& b) {
              return a.cluster_id < b.cluster_id;
            });
  return staff;
}

DerivedStaff DeriveStaff(const std::vector<AuthorCluster>& clusters,
                         const UniversityRegistry& registry,
                         const FilterParams& params) {
  return ResolveConflicts(ApplyFilters(MatchCandidates(clusters, registry), params),
                          clusters);
}

void WriteStaff(std::ostream& out, const DerivedStaff& staff,
                const std::vector<AuthorCluster>& clusters) {
  const auto index = IndexClusters(clusters);
  WriteCsvRow(out, {"university_id", "cluster_id", "evidence", "n_pubs", "unit_id"});
  for (const auto& [university, units] : staff.by_university) {
    for (const auto& unit : units) {
      for (const auto& id : unit.cluster_ids) {
        const auto it = index.find(id);
        const int n_pubs = it == index.end() ? 0 : it->second->n_pubs;
        WriteCsvRow(out, {university, id, std::string(ToString(unit.evidence)),
                          std::to_string(n_pubs), unit.unit_id});
      }
    }
  }
}

void WriteReviewQueue(std::ostream& out, const DerivedStaff& staff) {
  WriteCsvRow(out, {"cluster_id", "flags", "details"});
  for (const auto& c : staff.review_queue) {
    std::string details = "university=" + c.university_id;
    if (!c.details.empty()) details += "; " + c.details;
    WriteCsvRow(out, {c.cluster_id, FormatFlags(c.flags), details});
  }
}

DerivedStaff ParseStaff(std::istream& in, const std::string& source,
                        const std::vector<AuthorCluster>& clusters) {
  const auto index = IndexClusters(clusters);
  CsvReader reader(in, source);
  std::map<std::pair<std::string, std::string>, StaffUnit> units;
  std::map<std::string, std::string> row;
  while (reader.Next(&row)) {
    const std::string& university = reader.Require(row, "university_id");
    const std::string& unit_id = reader.Require(row, "unit_id");
    const auto evidence = ParseEvidence(reader.Require(row, "evidence"));
    if (!evidence) {
      throw ParseError(source, reader.line(), "evidence",
                       "unknown evidence '" + row["evidence"] + "'");
    }
    StaffUnit& unit = units[{university, unit_id}];
    unit.unit_id = unit_id;
    unit.university_id = university;
    if (unit.cluster_ids.empty()) unit.evidence = *evidence;
    unit.cluster_ids.push_back(reader.Require(row, "cluster_id"));
  }
  DerivedStaff staff;
  for (auto& [key, unit] : units) {
    std::sort(unit.cluster_ids.begin(), unit.cluster_ids.end());
    unit.n_pubs = DistinctPubs(unit.cluster_ids, index);
    staff.by_university[key.first].push_back(std::move(unit));
  }
  return staff;
}

DerivedStaff LoadStaff(const std::filesystem::path& path,
                       const std::vector<AuthorCluster>& clusters) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ParseStaff(in, path.string(), clusters);
}

}  // namespace bibperf
