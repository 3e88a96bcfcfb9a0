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

#ifndef BIBPERF_STAFF_H_
#define BIBPERF_STAFF_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bibperf/corpus.h"
#include "bibperf/disambig.h"

namespace bibperf {

// Derives each university's research staff from author clusters.

enum class Evidence { kOrganization, kEmail, kBoth };

enum class StaffFlag {
  kIncoherentOrg,
  kNonUniversityEmail,
  kEmailOrgConflict,
  kOrcidConflict,
  kEmailConflict,
  kBelowAge,
  kStale,
  kExcludedSmallUniversity,
};

using FlagSet = std::set<StaffFlag>;

std::string_view ToString(Evidence evidence);
std::string_view ToString(StaffFlag flag);
std::optional<Evidence> ParseEvidence(std::string_view text);
std::string FormatFlags(const FlagSet& flags);  // "a;b;c"

struct UniversityMatch {
  std::string university_id;
  Evidence evidence = Evidence::kOrganization;
  std::optional<std::string> organization_university;
  std::optional<std::string> email_university;
};

// Organization evidence fires when the cluster's organization is a registry
// variant; e-mail evidence when its address ends in "@<domain>" or
// ".<domain>". When the two point at different universities the e-mail wins
// (evidence = kEmail); CoherenceCheck flags the disagreement.
std::optional<UniversityMatch> MatchUniversity(const AuthorCluster& cluster,
                                               const UniversityRegistry& registry);

// Flags incoherent evidence: an organization that is not a registered
// university variant, an e-mail outside every university domain, or
// organization and e-mail naming different universities.
FlagSet CoherenceCheck(const AuthorCluster& cluster,
                       const UniversityRegistry& registry);

struct StaffCandidate {
  std::string cluster_id;
  std::string university_id;
  Evidence evidence = Evidence::kOrganization;
  FlagSet flags;
  std::string details;

  // Copied from the cluster for filtering and conflict resolution.
  int n_pubs = 0;
  int academic_age = 0;
  int last_year = 0;
  std::optional<std::string> orcid;
  std::optional<std::string> email;

  bool accepted() const { return flags.empty(); }
};

// One candidate per matched cluster, with coherence flags already set.
std::vector<StaffCandidate> MatchCandidates(const std::vector<AuthorCluster>& clusters,
                                            const UniversityRegistry& registry);

struct FilterParams {
  int min_clusters = 30;
  int min_age = 4;
  int recency_year = 2020;
};

// below_age iff academic_age < min_age; stale iff last_year < recency_year;
// excluded_small_university iff the university had fewer than min_clusters
// candidates before any flag was considered.
std::vector<StaffCandidate> ApplyFilters(std::vector<StaffCandidate> candidates,
                                         const FilterParams& params);

// A resolved staff member: one or more accepted clusters of one university
// that share an ORCID or e-mail.
struct StaffUnit {
  std::string unit_id;  // smallest member cluster_id
  std::string university_id;
  Evidence evidence = Evidence::kOrganization;
  std::vector<std::string> cluster_ids;
  int n_pubs = 0;  // distinct publications across members
};

struct DerivedStaff {
  std::map<std::string, std::vector<StaffUnit>> by_university;
  std::vector<StaffCandidate> review_queue;

  size_t unit_count() const;
};

// Accepted clusters linked by a shared ORCID or e-mail are grouped. A group
// confined to one university becomes a single staff unit. A group spanning
// universities keeps the side of its largest cluster (n_pubs, then smaller
// cluster_id); clusters elsewhere are flagged orcid_conflict/email_conflict.
// Every flagged candidate lands in review_queue.
DerivedStaff ResolveConflicts(const std::vector<StaffCandidate>& candidates,
                              const std::vector<AuthorCluster>& clusters);

// MatchCandidates -> ApplyFilters -> ResolveConflicts.
DerivedStaff DeriveStaff(const std::vector<AuthorCluster>& clusters,
                         const UniversityRegistry& registry,
                         const FilterParams& params);

// staff.csv: university_id,cluster_id,evidence,n_pubs,unit_id (one row per
// member cluster). review_queue.csv: cluster_id,flags,details.
void WriteStaff(std::ostream& out, const DerivedStaff& staff,
                const std::vector<AuthorCluster>& clusters);
void WriteReviewQueue(std::ostream& out, const DerivedStaff& staff);
DerivedStaff ParseStaff(std::istream& in, const std::string& source,
                        const std::vector<AuthorCluster>& clusters);
DerivedStaff LoadStaff(const std::filesystem::path& path,
                       const std::vector<AuthorCluster>& clusters);

}  // namespace bibperf

#endif  // BIBPERF_STAFF_H_
