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

#ifndef BIBPERF_DISAMBIG_H_
#define BIBPERF_DISAMBIG_H_

#include <compare>
#include <filesystem>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bibperf/corpus.h"

namespace bibperf {

// Rule-based author-name clustering. The default weight table is a
// configurable approximation of a rule-based scoring disambiguator; it is not
// a reimplementation of any particular published rule set.

// Address of one mention: publication and byline position.
struct MentionRef {
  std::string pub_id;
  int position = 0;

  auto operator<=>(const MentionRef&) const = default;
  bool operator==(const MentionRef&) const = default;
};

// Pair score assigned when a hard conflict forbids a merge.
inline constexpr double kNeverMerge = -std::numeric_limits<double>::infinity();

struct ScoringRules {
  double orcid = 100;
  double researcher_id = 100;
  double email = 90;
  // Per distinct shared co-author last name.
  double coauthor = 25;
  double organization = 15;
  double journal = 10;
  double subject_category = 10;
  // Identical full (non-initial) first names.
  double first_name = 10;
  double merge_threshold = 50;
  bool orcid_conflict = true;
  bool researcher_id_conflict = false;

  // Throws ValidationError on non-finite weights or threshold <= 0.
  void Validate() const;
  bool operator==(const ScoringRules&) const = default;
};

// Key-value rule file: one "<kind> = <weight>" per line plus
// "merge_threshold" and "hard_conflicts = orcid[,researcher_id]".
ScoringRules ParseScoringRules(std::istream& in, const std::string& source);
ScoringRules LoadScoringRules(const std::filesystem::path& path);
void WriteScoringRules(std::ostream& out, const ScoringRules& rules);

// A mention together with the publication metadata the scorer looks at.
struct MentionContext {
  MentionRef ref;
  const AuthorMention* mention = nullptr;
  int year = 0;
  std::string journal;  // lowercased
  std::vector<std::string> subject_categories;  // sorted
  std::vector<std::string> coauthor_last_names;  // sorted, distinct
};

MentionContext MakeMentionContext(const PublicationRecord& pub, int position);

// "<last_name>|<first initial>", e.g. "damico|c".
std::string BlockKey(const AuthorMention& mention);

struct Block {
  std::string key;
  std::vector<MentionRef> mentions;  // sorted
};

// Partitions every mention of the corpus by block key. Blocks are ordered by
// key; an empty corpus gives no blocks.
std::vector<Block> BlockMentions(const Corpus& corpus);

// Sum of the weights of satisfied evidence kinds, or kNeverMerge on a hard
// conflict. Symmetric. Throws Error when both mentions sit on the same
// publication.
double ScorePair(const MentionContext& a, const MentionContext& b,
                 const ScoringRules& rules);

// Greedy average-linkage agglomeration of one block. Each step merges the
// cluster pair with the highest average pairwise score, provided it reaches
// merge_threshold and no pair is a hard conflict (mentions of one
// publication never share a cluster). Ties go to the pair whose smallest
// mentions come first. Returns groups ordered by their smallest mention.
std::vector<std::vector<MentionRef>> PartitionBlock(const Block& block,
                                                    const Corpus& corpus,
                                                    const ScoringRules& rules);

// Summary of a proto-individual: one row per author cluster.
struct AuthorCluster {
  std::string cluster_id;
  std::vector<MentionRef> mention_refs;  // sorted
  int n_pubs = 0;
  int first_year = 0;
  int last_year = 0;
  int academic_age = 0;
  std::string full_name;
  std::string last_name;
  std::string first_name;
  std::optional<std::string> email;
  std::optional<std::string> organization;
  std::optional<std::string> city;
  std::optional<std::string> country;
  std::optional<std::string> orcid;
  std::optional<std::string> researcher_id;

  bool operator==(const AuthorCluster&) const = default;
};

// Summarizes a non-empty mention set. Modal values break ties toward the
// lexicographically smaller string; orcid/researcher_id are set only when a
// single value occurs. Throws Error on conflicting ORCIDs or an empty set.
AuthorCluster SummarizeCluster(const std::vector<MentionRef>& mentions,
                               const Corpus& corpus);

// PartitionBlock + SummarizeCluster (cluster_id left empty).
std::vector<AuthorCluster> ClusterBlock(const Block& block,
                                        const Corpus& corpus,
                                        const ScoringRules& rules);

// Whole-corpus disambiguation, block-parallel over `threads` workers.
// Clusters are ordered by smallest mention and numbered C0000001, ...; the
// result is identical for any thread count.
std::vector<AuthorCluster> Disambiguate(const Corpus& corpus,
                                        const ScoringRules& rules,
                                        int threads = 1);

// clusters.jsonl: summary fields in declaration order, then the member mentions.
void WriteClusters(std::ostream& out, const std::vector<AuthorCluster>& clusters);
std::vector<AuthorCluster> ParseClusters(std::istream& in,
                                         const std::string& source);
std::vector<AuthorCluster> LoadClusters(const std::filesystem::path& path);

// Pairwise clustering quality by brute-force enumeration of mention pairs.
struct PairwiseMetrics {
  long long true_positives = 0;
  long long predicted_pairs = 0;
  long long true_pairs = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 1.0;
};

// Both maps label mentions with a group id; only mentions present in both are
// compared.
PairwiseMetrics EvaluatePairwise(const std::map<MentionRef, std::string>& predicted,
                                 const std::map<MentionRef, std::string>& truth);

}  // namespace bibperf

#endif  // BIBPERF_DISAMBIG_H_
