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

#include "bibperf/synth.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>

#include "bibperf/disambig.h"
#include "bibperf/error.h"
#include "test_support.h"

namespace bibperf {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SynthConfig Small(uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  c.n_researchers = 60;
  c.n_universities = 3;
  c.non_faculty_share = 0.3;
  c.homonym_rate = 0.1;
  c.orcid_missing_rate = 0.3;
  c.email_missing_rate = 0.3;
  c.affiliation_variant_rate = 0.2;
  return c;
}

TEST(GenerateTest, SameSeedGivesByteIdenticalFiles) {
  testing::ScratchDir scratch("synth_determinism");
  const fs::path a = scratch.path() / "a";
  const fs::path b = scratch.path() / "b";
  WriteWorld(Generate(Small(7), 1), a);
  WriteWorld(Generate(Small(7), 4), b);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const fs::path other = b / entry.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(Slurp(entry.path()), Slurp(other)) << entry.path().filename();
  }
  EXPECT_EQ(files, 7);
}

TEST(GenerateTest, DifferentSeedsDiffer) {
  const SynthWorld a = Generate(Small(1));
  const SynthWorld b = Generate(Small(2));
  EXPECT_NE(a.publications, b.publications);
}

TEST(GenerateTest, GroundTruthLabelsEveryMention) {
  const SynthWorld w = Generate(Small(11));
  size_t mentions = 0;
  for (const auto& p : w.publications) {
    for (size_t i = 0; i < p.mentions.size(); ++i) {
      ++mentions;
      const auto it = w.truth.mention_person.find({p.pub_id, static_cast<int>(i)});
      ASSERT_NE(it, w.truth.mention_person.end()) << p.pub_id << "#" << i;
      const SynthPerson* person = w.truth.Find(it->second);
      ASSERT_NE(person, nullptr);
      EXPECT_TRUE(std::binary_search(person->pub_ids.begin(), person->pub_ids.end(), p.pub_id));
    }
  }
  EXPECT_EQ(mentions, w.truth.mention_person.size());
}

TEST(GenerateTest, OnlyFacultyAreOnTheRoster) {
  const SynthWorld w = Generate(Small(12));
  std::set<std::string> roster;
  for (const auto& e : w.roster) roster.insert(e.person_id);
  int faculty = 0, non_faculty = 0;
  for (const auto& p : w.truth.persons) {
    if (p.kind == PersonKind::kFaculty) {
      ++faculty;
      EXPECT_TRUE(roster.contains(p.person_id)) << p.person_id;
    } else {
      if (p.kind == PersonKind::kNonFaculty) ++non_faculty;
      EXPECT_FALSE(roster.contains(p.person_id)) << p.person_id;
    }
  }
  EXPECT_EQ(faculty, 60);
  EXPECT_GT(non_faculty, 0);
}

TEST(GenerateTest, HomonymsShareBlockKeys) {
  SynthConfig c = Small(13);
  c.homonym_rate = 0.2;
  const SynthWorld w = Generate(c);
  std::map<std::string, std::set<std::string>> people_by_key;
  for (const auto& p : w.truth.persons) {
    if (p.kind != PersonKind::kFaculty) continue;
    people_by_key[BlockKey(MakeMention(p.last_name + ", " + p.first_name, "", ""))].insert(
        p.person_id);
  }
  int shared = 0;
  for (const auto& [key, people] : people_by_key) {
    if (people.size() > 1) shared += static_cast<int>(people.size());
  }
  EXPECT_EQ(shared, 2 * 12);  // round(0.2 * 60) pairs
}

TEST(GenerateTest, InvalidConfigsAreRejected) {
  SynthConfig c;
  c.n_researchers = 0;
  EXPECT_THROW(Generate(c), ValidationError);
  c = SynthConfig{};
  c.orcid_missing_rate = 1.5;
  EXPECT_THROW(Generate(c), ValidationError);
  c = SynthConfig{};
  c.window = {2019, 2015};
  EXPECT_THROW(Generate(c), ValidationError);
}

TEST(GenerateTest, MoreHomonymPairsThanResearchersIsInfeasible) {
  SynthConfig c;
  c.n_researchers = 3;
  c.n_universities = 1;
  c.homonym_rate = 0.5;  // round(1.5) = 2 pairs need 4 faculty
  try {
    Generate(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("homonym"), std::string::npos);
  }
}

TEST(ParseSynthConfigTest, KeysAndErrors) {
  const SynthConfig c = ParseSynthConfig(
      {{"seed", "9"}, {"n_researchers", "120"}, {"window", "2014:2018"},
       {"non_faculty_share", "0.35"}},
      "run.conf");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.n_researchers, 120);
  EXPECT_EQ(c.window, (YearRange{2014, 2018}));
  EXPECT_DOUBLE_EQ(c.non_faculty_share, 0.35);
  EXPECT_THROW(ParseSynthConfig({{"n_researcher", "1"}}, "run.conf"), ParseError);
  EXPECT_THROW(ParseSynthConfig({{"n_researchers", "12x"}}, "run.conf"), ParseError);
  EXPECT_THROW(ParseSynthConfig({{"homonym_rate", "0.9"}}, "run.conf"), ValidationError);
}

std::vector<SubjectCategory> OneSc() { return {{"S01", "Physics", "A1", false, false}}; }

TEST(OracleTest, EmptyPublicationResearcherScoresZero) {
  const std::vector<PublicationRecord> pubs = {
      testing::Pub("W1", 2016, {"S01"}, 4, testing::Byline(2))};
  const OracleScores o = ComputeOracleScores(
      {{"p1", "U1", "S01", 5.0, {"W1"}}, {"p2", "U1", "S01", 5.0, {}}}, pubs, OneSc(),
      {2015, 2019});
  EXPECT_DOUBLE_EQ(o.fss_r.at("p2"), 0.0);
  EXPECT_DOUBLE_EQ(o.fss_r.at("p1"), 0.1);
  EXPECT_DOUBLE_EQ(o.baseline.at("S01"), 0.1);
  EXPECT_DOUBLE_EQ((o.fss_u.at({"U1", "overall", "all"})), 0.5);
}

TEST(OracleTest, SingleMemberScsNormalizeToOne) {
  const std::vector<PublicationRecord> pubs = {
      testing::Pub("W1", 2016, {"S01"}, 4, testing::Byline(2)),
      testing::Pub("W2", 2017, {"S02"}, 9, testing::Byline(3))};
  const std::vector<SubjectCategory> scheme = {{"S01", "Physics", "A1", false, false},
                                               {"S02", "Chemistry", "A1", false, false}};
  const OracleScores o = ComputeOracleScores(
      {{"p1", "U1", "S01", 5.0, {"W1"}}, {"p2", "U1", "S02", 3.0, {"W2"}}}, pubs, scheme,
      {2015, 2019});
  EXPECT_DOUBLE_EQ((o.fss_u.at({"U1", "overall", "all"})), 1.0);
  EXPECT_DOUBLE_EQ((o.fss_u.at({"U1", "area", "A1"})), 1.0);
  EXPECT_DOUBLE_EQ((o.fss_u.at({"U1", "sc", "S02"})), 1.0);
}

}  // namespace
}  // namespace bibperf
