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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "bibperf/disambig.h"
#include "bibperf/fss.h"
#include "bibperf/staff.h"
#include "bibperf/synth.h"
#include "json.hpp"
#include "pipeline.h"
#include "test_support.h"

namespace bibperf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string Quote(const std::string& s) { return "'" + s + "'"; }

RunResult RunCli(const fs::path& scratch, const std::vector<std::string>& args) {
  std::string command = Quote(BIBPERF_CLI_PATH);
  for (const auto& a : args) command += " " + Quote(a);
  const fs::path out = scratch / "stdout.txt";
  const fs::path err = scratch / "stderr.txt";
  command += " >" + Quote(out.string()) + " 2>" + Quote(err.string());
  const int status = std::system(command.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = Slurp(out);
  r.err = Slurp(err);
  return r;
}

const std::vector<std::string> kChain = {"synth", "ingest", "disambiguate", "derive-staff",
                                         "score", "compare", "report"};

void RunChain(const fs::path& scratch, const fs::path& out, const std::string& threads) {
  for (const auto& stage : kChain) {
    const RunResult r = RunCli(scratch, {stage, "--out", out.string(), "--seed", "42",
                                         "--threads", threads, "--set",
                                         "synth.non_faculty_share=0.35"});
    ASSERT_EQ(r.exit_code, 0) << stage << ": " << r.err;
    const json reply = json::parse(r.out);
    EXPECT_EQ(reply["subcommand"], stage);
    EXPECT_FALSE(reply["outputs"].empty());
  }
}

TEST(CliTest, FullChainOnSeed42ProducesReport) {
  testing::ScratchDir scratch("cli_chain");
  const fs::path out = scratch.path() / "run";
  RunChain(scratch.path(), out, "1");
  ASSERT_TRUE(fs::exists(out / "compare" / "report.json"));
  EXPECT_TRUE(fs::exists(out / "compare" / "rank_table.csv"));
  EXPECT_TRUE(fs::exists(out / "compare" / "quartile_matrix.csv"));
  EXPECT_TRUE(fs::exists(out / "compare" / "distribution_stats.csv"));
  EXPECT_TRUE(fs::exists(out / "report" / "report.txt"));

  const json report = json::parse(Slurp(out / "compare" / "report.json"));
  EXPECT_EQ(report["rank_table"].size(), 5u);

  const json manifest = json::parse(Slurp(out / "compare" / "run_manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "compare");
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_EQ(manifest["config_sha256"].get<std::string>().size(), 64u);
  ASSERT_FALSE(manifest["outputs"].empty());
  for (const auto& entry : manifest["outputs"]) {
    const std::string path = entry["path"];
    EXPECT_EQ(entry["sha256"], Sha256File(out / path)) << path;
  }
  for (const auto& entry : manifest["inputs"]) {
    const std::string path = entry["path"];
    EXPECT_EQ(entry["sha256"], Sha256File(out / path)) << path;
  }
}

TEST(CliTest, ScoreFilesMatchOracle) {
  testing::ScratchDir scratch("cli_oracle");
  const fs::path out = scratch.path() / "run";
  RunChain(scratch.path(), out, "2");
  const ArtifactLayout layout(out);
  const RunConfig defaults;
  const YearRange window = defaults.window;
  LoadOptions load;
  load.window = window;
  load.sc_lookback = defaults.sc_lookback;
  const std::vector<PublicationRecord> pubs = LoadPublications(layout.publications(), load);
  const Corpus corpus(pubs);
  const SCScheme scheme = LoadScheme(layout.scheme());
  const std::vector<AuthorCluster> clusters = LoadClusters(layout.clusters());
  std::map<Mode, std::vector<Subject>> subjects;
  subjects[Mode::kSupervised] =
      SupervisedSubjects(LoadRoster(layout.roster(), window), corpus, window);
  subjects[Mode::kUnsupervised] =
      UnsupervisedSubjects(LoadStaff(layout.staff(), clusters), clusters, defaults.assumed_t);

  for (Mode mode : {Mode::kSupervised, Mode::kUnsupervised}) {
    SCOPED_TRACE(std::string(ToString(mode)));
    std::map<std::string, const Subject*> by_id;
    for (const Subject& s : subjects[mode]) by_id[s.subject_id] = &s;
    const std::vector<ResearcherScore> scores =
        LoadResearcherScores(layout.researcher_scores(mode));
    ASSERT_FALSE(scores.empty());
    std::vector<OracleSubject> oracle_subjects;
    for (const ResearcherScore& r : scores) {
      const Subject* s = by_id.at(r.subject_id);
      EXPECT_DOUBLE_EQ(s->t, r.t) << r.subject_id;
      oracle_subjects.push_back({s->subject_id, s->university_id, r.sc_id, s->t, s->pub_ids});
    }
    const OracleScores oracle =
        ComputeOracleScores(oracle_subjects, pubs, scheme.categories(), window);
    for (const ResearcherScore& r : scores) {
      EXPECT_NEAR(oracle.fss_r.at(r.subject_id), r.fss_r, 1e-9) << r.subject_id;
    }
    const std::vector<UniversityScore> universities =
        LoadUniversityScores(layout.university_scores(mode));
    EXPECT_EQ(universities.size(), oracle.fss_u.size());
    for (const UniversityScore& u : universities) {
      const auto it =
          oracle.fss_u.find({u.university_id, std::string(ToString(u.level)), u.level_key});
      ASSERT_NE(it, oracle.fss_u.end()) << u.university_id << "/" << u.level_key;
      EXPECT_NEAR(it->second, u.fss_u, 1e-9);
    }
  }
}

TEST(CliTest, CompareWithoutScoresNamesScore) {
  testing::ScratchDir scratch("cli_missing");
  const RunResult r = RunCli(scratch.path(), {"compare", "--out", (scratch.path() / "empty").string()});
  EXPECT_NE(r.exit_code, 0);
  // Exactly one machine-parsable line.
  ASSERT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  const json error = json::parse(r.err);
  EXPECT_EQ(error["error"], "missing_artifact");
  EXPECT_EQ(error["requires"], "score");
  EXPECT_NE(error["message"].get<std::string>().find("score"), std::string::npos);
}

TEST(CliTest, SameConfigAndSeedGiveIdenticalReportDigests) {
  testing::ScratchDir scratch("cli_determinism");
  const fs::path a = scratch.path() / "a";
  const fs::path b = scratch.path() / "b";
  RunChain(scratch.path(), a, "1");
  RunChain(scratch.path(), b, "3");
  EXPECT_EQ(Sha256File(a / "compare" / "report.json"), Sha256File(b / "compare" / "report.json"));
  for (const char* rel : {"disambiguate/clusters.jsonl", "staff/staff.csv",
                          "score/supervised/scores_researchers.csv",
                          "score/unsupervised/scores_universities.csv"}) {
    EXPECT_EQ(Sha256File(a / rel), Sha256File(b / rel)) << rel;
  }
}

TEST(CliTest, UnknownFlagIsUsageError) {
  testing::ScratchDir scratch("cli_usage");
  const RunResult r = RunCli(scratch.path(), {"score", "--bogus", "1"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "usage");
}

TEST(CliTest, BadConfigValueIsParseError) {
  testing::ScratchDir scratch("cli_config");
  const fs::path config = scratch.path() / "run.conf";
  std::ofstream(config) << "# run\nseed = 7\nmin_age = four\n";
  const RunResult r = RunCli(scratch.path(), {"synth", "--config", config.string(), "--out",
                                              (scratch.path() / "o").string()});
  EXPECT_EQ(r.exit_code, 1);
  const json error = json::parse(r.err);
  EXPECT_EQ(error["error"], "parse_error");
  EXPECT_EQ(error["field"], "min_age");
}

TEST(CliTest, FlagsOverrideConfigFile) {
  RunConfig config;
  ApplySettings({{"seed", "7"}, {"window", "2014:2018"}}, "file", &config);
  ApplySettings({{"seed", "9"}}, "command line", &config);
  EXPECT_EQ(config.seed, 9u);
  EXPECT_EQ(config.window, (YearRange{2014, 2018}));
  EXPECT_THROW(ApplySettings({{"no_such_key", "1"}}, "file", &config), ParseError);
}

}  // namespace
}  // namespace bibperf
