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


#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bibperf/compare.h"
#include "bibperf/disambig.h"
#include "bibperf/fss.h"
#include "bibperf/staff.h"
#include "bibperf/synth.h"

namespace bibperf {
namespace {

SynthConfig WorldConfig(int researchers) {
  SynthConfig config;
  config.seed = 7;
  config.n_researchers = researchers;
  config.non_faculty_share = 0.35;
  config.orcid_missing_rate = 0.3;
  config.email_missing_rate = 0.3;
  config.homonym_rate = 0.05;
  return config;
}

// One world per size, built on first use.
const SynthWorld& World(int researchers) {
  static std::map<int, SynthWorld> worlds;
  auto it = worlds.find(researchers);
  if (it == worlds.end()) it = worlds.emplace(researchers, Generate(WorldConfig(researchers))).first;
  return it->second;
}

void BM_Generate(benchmark::State& state) {
  const SynthConfig config = WorldConfig(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Generate(config));
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ParsePublications(benchmark::State& state) {
  std::stringstream jsonl;
  WritePublications(jsonl, World(static_cast<int>(state.range(0))).publications);
  const std::string text = jsonl.str();
  LoadOptions options;
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(ParsePublications(in, "bench", options));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParsePublications)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Disambiguate(benchmark::State& state) {
  const Corpus corpus(World(static_cast<int>(state.range(0))).publications);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Disambiguate(corpus, ScoringRules{}, threads));
}
BENCHMARK(BM_Disambiguate)
    ->Args({200, 1})
    ->Args({400, 1})
    ->Args({400, 4})
    ->Unit(benchmark::kMillisecond);

void BM_DeriveStaff(benchmark::State& state) {
  const SynthWorld& world = World(static_cast<int>(state.range(0)));
  const std::vector<AuthorCluster> clusters =
      Disambiguate(Corpus(world.publications), ScoringRules{}, 1);
  const UniversityRegistry registry(world.universities);
  for (auto _ : state) benchmark::DoNotOptimize(DeriveStaff(clusters, registry, FilterParams{}));
}
BENCHMARK(BM_DeriveStaff)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ScoreBothModes(benchmark::State& state) {
  const SynthWorld& world = World(static_cast<int>(state.range(0)));
  ScoringOptions options;
  options.window = {2015, 2019};
  options.threads = static_cast<int>(state.range(1));
  const Corpus corpus(world.publications);
  const SCScheme scheme(world.scheme);
  const std::vector<AuthorCluster> clusters = Disambiguate(corpus, ScoringRules{}, 1);
  const DerivedStaff staff = DeriveStaff(clusters, UniversityRegistry(world.universities),
                                         FilterParams{});
  const std::vector<Subject> sup = SupervisedSubjects(world.roster, corpus, options.window);
  const std::vector<Subject> unsup = UnsupervisedSubjects(staff, clusters, options.assumed_t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ScoreBothModes(sup, unsup, corpus, scheme, &world.incidence, options));
  }
}
BENCHMARK(BM_ScoreBothModes)->Args({400, 1})->Args({400, 4})->Unit(benchmark::kMillisecond);

std::vector<ModeEntry> RandomEntries(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> score(0.2, 2.5);
  std::vector<ModeEntry> entries;
  for (int i = 0; i < n; ++i) {
    ModeEntry e;
    e.university_id = "u" + std::to_string(i);
    e.fss_u = score(rng);
    e.obs = 40 + i;
    entries.push_back(e);
  }
  return entries;
}

void BM_CompareRankings(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const int n = static_cast<int>(state.range(0));
  const std::vector<ModeEntry> unsup = RandomEntries(n, rng);
  const std::vector<ModeEntry> sup = RandomEntries(n, rng);
  for (auto _ : state) {
    const RankTable table = RankUniversities(unsup, sup, {});
    benchmark::DoNotOptimize(QuartileConfusion(table));
    benchmark::DoNotOptimize(RankJumps(table));
    benchmark::DoNotOptimize(CorrelateTable("overall", table));
  }
}
BENCHMARK(BM_CompareRankings)->Arg(65)->Arg(1000);

}  // namespace
}  // namespace bibperf

BENCHMARK_MAIN();
