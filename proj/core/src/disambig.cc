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

#include "bibperf/disambig.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "bibperf/error.h"
#include "bibperf/normalize.h"
#include "bibperf/parallel.h"

namespace bibperf {
namespace {

// A first name counts as "full" when some token has 3+ characters; "ca" or
// "c a" are initials.
bool IsFullFirstName(const std::string& first) {
  size_t run = 0;
  for (char c : first) {
    if (c == ' ' || c == '-') {
      run = 0;
      continue;
    }
    if (++run >= 3) return true;
  }
  return false;
}

bool SharesAny(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

int CountShared(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  int shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      ++shared;
      ++i;
      ++j;
    } else if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return shared;
}

// Most frequent value; ties go to the lexicographically smaller one.
std::optional<std::string> Modal(const std::map<std::string, int>& counts) {
  const std::string* best = nullptr;
  int best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {
      best = &value;
      best_count = count;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

void Count(const std::optional<std::string>& value, std::map<std::string, int>* counts) {
  if (value && !value->empty()) ++(*counts)[*value];
}

// Average-linkage state over cluster slots. Slot i initially holds mention i;
// merging b into a (a < b) keeps slot a, so slot order always matches the
// order of each cluster's smallest mention.
class Agglomerator {
 public:
  Agglomerator(std::vector<std::vector<double>> scores, double threshold)
      : n_(scores.size()),
        sum_(n_, std::vector<double>(n_, 0.0)),
        conflict_(n_, std::vector<char>(n_, 0)),
        size_(n_, 1),
        active_(n_, 1),
        members_(n_),
        best_(n_),
        threshold_(threshold) {
    for (size_t i = 0; i < n_; ++i) {
      members_[i] = {i};
      for (size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        if (std::isinf(scores[i][j]) && scores[i][j] < 0) {
          conflict_[i][j] = 1;
        } else {
          sum_[i][j] = scores[i][j];
        }
      }
    }
    for (size_t i = 0; i < n_; ++i) RecomputeBest(i);
  }

  void Run() {
    while (true) {
      size_t a = n_;
      for (size_t i = 0; i < n_; ++i) {
        if (!active_[i] || best_[i].partner == n_) continue;
        if (a == n_ || best_[i].value > best_[a].value) a = i;
      }
      if (a == n_ || !(best_[a].value >= threshold_)) return;
      Merge(a, best_[a].partner);
    }
  }

  std::vector<std::vector<size_t>> Groups() const {
    std::vector<std::vector<size_t>> groups;
    for (size_t i = 0; i < n_; ++i) {
      if (!active_[i]) continue;
      auto g = members_[i];
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
    return groups;
  }

 private:
  struct Best {
    double value = kNeverMerge;
    size_t partner = 0;
  };

  double Linkage(size_t a, size_t b) const {
    if (conflict_[a][b]) return kNeverMerge;
    return sum_[a][b] / (static_cast<double>(size_[a]) * size_[b]);
  }

  // Best partner among active slots after i; ties keep the smaller slot.
  void RecomputeBest(size_t i) {
    Best best{kNeverMerge, n_};
    for (size_t j = i + 1; j < n_; ++j) {
      if (!active_[j] || conflict_[i][j]) continue;
      const double v = Linkage(i, j);
      if (best.partner == n_ || v > best.value) best = {v, j};
    }
    best_[i] = best;
  }

  void Merge(size_t a, size_t b) {
    active_[b] = 0;
    for (size_t c = 0; c < n_; ++c) {
      if (!active_[c] || c == a) continue;
      sum_[a][c] += sum_[b][c];
      sum_[c][a] = sum_[a][c];
      const char conflict = conflict_[a][c] | conflict_[b][c];
      conflict_[a][c] = conflict_[c][a] = conflict;
    }
    size_[a] += size_[b];
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();

    RecomputeBest(a);
    for (size_t c = 0; c < a; ++c) {
      if (!active_[c]) continue;
      if (best_[c].partner == a || best_[c].partner == b) {
        RecomputeBest(c);
      } else if (!conflict_[c][a]) {
        const double v = Linkage(c, a);
        if (best_[c].partner == n_ || v > best_[c].value ||
            (v == best_[c].value && a < best_[c].partner)) {
          best_[c] = {v, a};
        }
      }
    }
    for (size_t c = a + 1; c < n_; ++c) {
      if (active_[c] && best_[c].partner == b) RecomputeBest(c);
    }
  }

  size_t n_;
  std::vector<std::vector<double>> sum_;
  std::vector<std::vector<char>> conflict_;
  std::vector<size_t> size_;
  std::vector<char> active_;
  std::vector<std::vector<size_t>> members_;
  std::vector<Best> best_;
  double threshold_;
};

}  // namespace

void ScoringRules::Validate() const {
  for (double w : {orcid, researcher_id, email, coauthor, organization, journal,
                   subject_category, first_name, merge_threshold}) {
    if (!std::isfinite(w)) throw ValidationError("scoring rules: non-finite weight");
  }
  if (!(merge_threshold > 0)) {
    throw ValidationError("scoring rules: merge_threshold must be positive");
  }
}

MentionContext MakeMentionContext(const PublicationRecord& pub, int position) {
  MentionContext ctx;
  ctx.ref = {pub.pub_id, position};
  ctx.mention = &pub.mentions.at(static_cast<size_t>(position));
  ctx.year = pub.year;
  ctx.journal = NormalizeEmail(pub.journal);
  ctx.subject_categories = pub.subject_categories;
  std::sort(ctx.subject_categories.begin(), ctx.subject_categories.end());
  for (size_t i = 0; i < pub.mentions.size(); ++i) {
    if (static_cast<int>(i) == position) continue;
    ctx.coauthor_last_names.push_back(pub.mentions[i].last_name);
  }
  std::sort(ctx.coauthor_last_names.begin(), ctx.coauthor_last_names.end());
  ctx.coauthor_last_names.erase(
      std::unique(ctx.coauthor_last_names.begin(), ctx.coauthor_last_names.end()),
      ctx.coauthor_last_names.end());
  return ctx;
}

std::string BlockKey(const AuthorMention& mention) {
  std::string key = mention.last_name;
  key.push_back('|');
  if (!mention.first_name.empty()) {
    // First UTF-8 character of the normalized first name.
    size_t len = 1;
    const auto lead = static_cast<unsigned char>(mention.first_name[0]);
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    key += mention.first_name.substr(0, len);
  }
  return key;
}

std::vector<Block> BlockMentions(const Corpus& corpus) {
  std::map<std::string, std::vector<MentionRef>> by_key;
  for (const auto& pub : corpus.publications()) {
    for (size_t i = 0; i < pub.mentions.size(); ++i) {
      by_key[BlockKey(pub.mentions[i])].push_back({pub.pub_id, static_cast<int>(i)});
    }
  }
  std::vector<Block> blocks;
  blocks.reserve(by_key.size());
  for (auto& [key, refs] : by_key) {
    std::sort(refs.begin(), refs.end());
    blocks.push_back({key, std::move(refs)});
  }
  return blocks;
}

double ScorePair(const MentionContext& a, const MentionContext& b,
                 const ScoringRules& rules) {
  if (a.ref.pub_id == b.ref.pub_id) {
    throw Error("cannot score two mentions of publication '" + a.ref.pub_id + "'");
  }
  const AuthorMention& x = *a.mention;
  const AuthorMention& y = *b.mention;
  double score = 0.0;
  if (x.orcid && y.orcid) {
    if (*x.orcid == *y.orcid) {
      score += rules.orcid;
    } else if (rules.orcid_conflict) {
      return kNeverMerge;
    }
  }
  if (x.researcher_id && y.researcher_id) {
    if (*x.researcher_id == *y.researcher_id) {
      score += rules.researcher_id;
    } else if (rules.researcher_id_conflict) {
      return kNeverMerge;
    }
  }
  if (x.email && y.email && *x.email == *y.email) score += rules.email;
  score += rules.coauthor * CountShared(a.coauthor_last_names, b.coauthor_last_names);
  if (x.organization && y.organization && *x.organization == *y.organization) {
    score += rules.organization;
  }
  if (!a.journal.empty() && a.journal == b.journal) score += rules.journal;
  if (SharesAny(a.subject_categories, b.subject_categories)) {
    score += rules.subject_category;
  }
  if (x.first_name == y.first_name && IsFullFirstName(x.first_name)) {
    score += rules.first_name;
  }
  return score;
}

std::vector<std::vector<MentionRef>> PartitionBlock(const Block& block,
                                                    const Corpus& corpus,
                                                    const ScoringRules& rules) {
  const size_t n = block.mentions.size();
  std::vector<MentionContext> contexts;
  contexts.reserve(n);
  for (const auto& ref : block.mentions) {
    contexts.push_back(MakeMentionContext(corpus.Get(ref.pub_id), ref.position));
  }
  std::vector<std::vector<double>> scores(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double s = contexts[i].ref.pub_id == contexts[j].ref.pub_id
                           ? kNeverMerge
                           : ScorePair(contexts[i], contexts[j], rules);
      scores[i][j] = scores[j][i] = s;
    }
  }
  Agglomerator agg(std::move(scores), rules.merge_threshold);
  agg.Run();
  std::vector<std::vector<MentionRef>> groups;
  for (const auto& g : agg.Groups()) {
    std::vector<MentionRef> refs;
    refs.reserve(g.size());
    for (size_t idx : g) refs.push_back(block.mentions[idx]);
    groups.push_back(std::move(refs));
  }
  return groups;
}

AuthorCluster SummarizeCluster(const std::vector<MentionRef>& mentions,
                               const Corpus& corpus) {
  if (mentions.empty()) throw Error("cannot summarize an empty mention set");
  AuthorCluster c;
  c.mention_refs = mentions;
  std::sort(c.mention_refs.begin(), c.mention_refs.end());

  std::set<std::string> pubs;
  std::map<std::string, int> full_names, last_names, emails, orgs, cities, countries;
  std::set<std::string> orcids, researcher_ids;
  c.first_year = std::numeric_limits<int>::max();
  c.last_year = std::numeric_limits<int>::min();
  for (const auto& ref : c.mention_refs) {
    const PublicationRecord& pub = corpus.Get(ref.pub_id);
    const AuthorMention& m = pub.mentions.at(static_cast<size_t>(ref.position));
    pubs.insert(ref.pub_id);
    c.first_year = std::min(c.first_year, pub.year);
    c.last_year = std::max(c.last_year, pub.year);
    ++full_names[m.raw_full_name];
    ++last_names[m.last_name];
    if (m.first_name.size() > c.first_name.size() ||
        (m.first_name.size() == c.first_name.size() && m.first_name < c.first_name)) {
      c.first_name = m.first_name;
    }
    Count(m.email, &emails);
    Count(m.organization, &orgs);
    Count(m.city, &cities);
    Count(m.country, &countries);
    if (m.orcid) orcids.insert(*m.orcid);
    if (m.researcher_id) researcher_ids.insert(*m.researcher_id);
  }
  if (orcids.size() > 1) {
    throw Error("cluster mixes ORCIDs " + *orcids.begin() + " and " + *orcids.rbegin());
  }
  c.n_pubs = static_cast<int>(pubs.size());
  c.academic_age = c.last_year - c.first_year;
  c.full_name = Modal(full_names).value_or("");
  c.last_name = Modal(last_names).value_or("");
  c.email = Modal(emails);
  c.organization = Modal(orgs);
  c.city = Modal(cities);
  c.country = Modal(countries);
  if (orcids.size() == 1) c.orcid = *orcids.begin();
  if (researcher_ids.size() == 1) c.researcher_id = *researcher_ids.begin();
  return c;
}

std::vector<AuthorCluster> ClusterBlock(const Block& block, const Corpus& corpus,
                                        const ScoringRules& rules) {
  std::vector<AuthorCluster> clusters;
  for (const auto& group : PartitionBlock(block, corpus, rules)) {
    clusters.push_back(SummarizeCluster(group, corpus));
  }
  return clusters;
}

std::vector<AuthorCluster> Disambiguate(const Corpus& corpus,
                                        const ScoringRules& rules, int threads) {
  rules.Validate();
  const std::vector<Block> blocks = BlockMentions(corpus);
  std::vector<std::vector<AuthorCluster>> per_block(blocks.size());
  ParallelFor(blocks.size(), threads, [&](size_t i) {
    per_block[i] = ClusterBlock(blocks[i], corpus, rules);
  });
  std::vector<AuthorCluster> clusters;
  for (auto& block_clusters : per_block) {
    for (auto& c : block_clusters) clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const AuthorCluster& a, const AuthorCluster& b) {
              return a.mention_refs.front() < b.mention_refs.front();
            });
  for (size_t i = 0; i < clusters.size(); ++i) {
    clusters[i].cluster_id = fmt::format("C{:07d}", i + 1);
  }
  return clusters;
}

PairwiseMetrics EvaluatePairwise(const std::map<MentionRef, std::string>& predicted,
                                 const std::map<MentionRef, std::string>& truth) {
  std::vector<std::pair<const std::string*, const std::string*>> labels;
  for (const auto& [ref, label] : predicted) {
    const auto it = truth.find(ref);
    if (it != truth.end()) labels.emplace_back(&label, &it->second);
  }
  PairwiseMetrics m;
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      const bool same_pred = *labels[i].first == *labels[j].first;
      const bool same_true = *labels[i].second == *labels[j].second;
      m.predicted_pairs += same_pred;
      m.true_pairs += same_true;
      m.true_positives += same_pred && same_true;
    }
  }
  if (m.predicted_pairs > 0) {
    m.precision = static_cast<double>(m.true_positives) / m.predicted_pairs;
  }
  if (m.true_pairs > 0) {
    m.recall = static_cast<double>(m.true_positives) / m.true_pairs;
  }
  m.f_measure = m.precision + m.recall > 0
                    ? 2 * m.precision * m.recall / (m.precision + m.recall)
                    : 0.0;
  return m;
}

}  // namespace bibperf
