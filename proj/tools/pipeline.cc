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

#include "pipeline.h"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "bibperf/compare.h"
#include "bibperf/csv.h"
#include "bibperf/disambig.h"
#include "json.hpp"

namespace bibperf {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::array<std::pair<Subcommand, std::string_view>, 7> kSubcommands = {{
    {Subcommand::kIngest, "ingest"},
    {Subcommand::kDisambiguate, "disambiguate"},
    {Subcommand::kDeriveStaff, "derive-staff"},
    {Subcommand::kScore, "score"},
    {Subcommand::kCompare, "compare"},
    {Subcommand::kSynth, "synth"},
    {Subcommand::kReport, "report"},
}};

int ParseIntSetting(const std::string& key, const std::string& value,
                    const std::string& source) {
  try {
    size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(source, 0, key, "expected an integer, got '" + value + "'");
}

double ParseDoubleSetting(const std::string& key, const std::string& value,
                          const std::string& source) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(source, 0, key, "expected a number, got '" + value + "'");
}

void Require(const fs::path& path, Subcommand producer) {
  if (!fs::exists(path)) throw MissingArtifactError(path, producer);
}

// Input path, falling back to the synth output of the same name.
fs::path InputPath(const fs::path& given, const ArtifactLayout& layout,
                   const char* synth_name) {
  if (!given.empty()) {
    if (!fs::exists(given)) throw Error("input file not found: " + given.string());
    return given;
  }
  const fs::path fallback = layout.synth_dir / synth_name;
  Require(fallback, Subcommand::kSynth);
  return fallback;
}

std::ofstream OpenForWrite(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

template <typename Fn>
fs::path WriteFile(const fs::path& path, Fn&& write) {
  auto out = OpenForWrite(path);
  write(out);
  out.close();
  if (!out) throw Error("failed writing " + path.string());
  return path;
}

LoadOptions CorpusOptions(const RunConfig& config) {
  LoadOptions options;
  options.window = config.window;
  options.sc_lookback = config.sc_lookback;
  return options;
}

std::string_view ToString(ModeSelection modes) {
  switch (modes) {
    case ModeSelection::kBoth:
      return "both";
    case ModeSelection::kSupervised:
      return "supervised";
    case ModeSelection::kUnsupervised:
      return "unsupervised";
  }
  return "both";
}

ordered_json ConfigJson(const RunConfig& c) {
  ordered_json j;
  j["corpus"] = c.corpus.string();
  j["roster"] = c.roster.string();
  j["registry"] = c.registry.string();
  j["scheme"] = c.scheme.string();
  j["incidence"] = c.incidence.string();
  j["rules"] = c.rules.string();
  j["window"] = fmt::format("{}:{}", c.window.first, c.window.last);
  j["sc_lookback"] = c.sc_lookback;
  j["assumed_t"] = c.assumed_t;
  j["modes"] = ToString(c.modes);
  j["min_clusters"] = c.filters.min_clusters;
  j["min_age"] = c.filters.min_age;
  j["recency"] = c.filters.recency_year;
  j["min_obs"] = c.exclusions.min_obs;
  j["obs_rule"] = ToString(c.exclusions.rule);
  j["seed"] = c.seed;
  j["top_k"] = c.top_k;
  j["jump_threshold"] = c.jump_threshold;
  ordered_json synth = ordered_json::object();
  for (const auto& [k, v] : c.synth) synth[k] = v;
  j["synth"] = std::move(synth);
  return j;
}

// Path relative to the output directory when inside it.
std::string DisplayPath(const fs::path& path, const fs::path& out) {
  const fs::path rel = path.lexically_relative(out);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return path.generic_string();
}

void WriteManifest(const RunConfig& config, Subcommand command, const fs::path& dir,
                   const std::vector<fs::path>& inputs,
                   const std::vector<fs::path>& outputs) {
  const ordered_json cfg = ConfigJson(config);
  ordered_json j;
  j["subcommand"] = ToString(command);
  j["seed"] = config.seed;
  j["config_sha256"] = Sha256Hex(cfg.dump());
  j["config"] = cfg;
  const auto digests = [&](const std::vector<fs::path>& paths) {
    ordered_json list = ordered_json::array();
    for (const fs::path& p : paths) {
      list.push_back({{"path", DisplayPath(p, config.out)}, {"sha256", Sha256File(p)}});
    }
    return list;
  };
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(outputs);
  WriteFile(dir / "run_manifest.json", [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

SCScheme LoadIngestedScheme(const ArtifactLayout& layout) {
  Require(layout.scheme(), Subcommand::kIngest);
  return LoadScheme(layout.scheme());
}

std::optional<FieldIncidence> LoadIngestedIncidence(const ArtifactLayout& layout) {
  if (!fs::exists(layout.incidence())) return std::nullopt;
  return LoadIncidence(layout.incidence());
}

StageResult RunIngest(const RunConfig& config, const ArtifactLayout& layout) {
  const fs::path corpus_path = InputPath(config.corpus, layout, "publications.jsonl");
  const fs::path roster_path = InputPath(config.roster, layout, "roster.csv");
  const fs::path registry_path = InputPath(config.registry, layout, "registry.csv");
  const fs::path scheme_path = InputPath(config.scheme, layout, "scheme.csv");
  fs::path incidence_path = config.incidence;
  if (incidence_path.empty() && fs::exists(layout.synth_dir / "incidence.csv")) {
    incidence_path = layout.synth_dir / "incidence.csv";
  }

  StageResult result;
  const std::vector<PublicationRecord> pubs =
      LoadPublications(corpus_path, CorpusOptions(config), &result.warnings);
  const Corpus corpus(pubs);
  const std::vector<RosterEntry> roster = LoadRoster(roster_path, config.window);
  const UniversityRegistry registry = LoadRegistry(registry_path);
  const SCScheme scheme = LoadScheme(scheme_path);
  for (const PublicationRecord& pub : corpus.publications()) {
    for (const std::string& sc : pub.subject_categories) {
      if (scheme.Find(sc) == nullptr) {
        throw ValidationError(fmt::format("publication {} lists SC {} absent from {}",
                                          pub.pub_id, sc, scheme_path.string()));
      }
    }
  }
  for (const RosterEntry& e : roster) {
    if (registry.Find(e.university_id) == nullptr) {
      throw ValidationError(fmt::format("roster member {} names unknown university {}",
                                        e.person_id, e.university_id));
    }
  }

  std::vector<fs::path> inputs = {corpus_path, roster_path, registry_path, scheme_path};
  result.outputs.push_back(WriteFile(
      layout.publications(), [&](std::ostream& o) { WritePublications(o, corpus.publications()); }));
  result.outputs.push_back(
      WriteFile(layout.roster(), [&](std::ostream& o) { WriteRoster(o, roster); }));
  result.outputs.push_back(
      WriteFile(layout.registry(), [&](std::ostream& o) { WriteRegistry(o, registry); }));
  result.outputs.push_back(
      WriteFile(layout.scheme(), [&](std::ostream& o) { WriteScheme(o, scheme); }));
  if (!incidence_path.empty()) {
    const FieldIncidence incidence = LoadIncidence(incidence_path);
    inputs.push_back(incidence_path);
    result.outputs.push_back(
        WriteFile(layout.incidence(), [&](std::ostream& o) { WriteIncidence(o, incidence); }));
  } else {
    fs::remove(layout.incidence());
  }
  result.outputs.push_back(WriteFile(layout.ingest_dir / "warnings.txt", [&](std::ostream& o) {
    for (const std::string& w : result.warnings) o << w << '\n';
  }));
  WriteManifest(config, Subcommand::kIngest, layout.ingest_dir, inputs, result.outputs);
  return result;
}

StageResult RunDisambiguate(const RunConfig& config, const ArtifactLayout& layout) {
  Require(layout.publications(), Subcommand::kIngest);
  const Corpus corpus(LoadPublications(layout.publications(), CorpusOptions(config)));
  const ScoringRules rules = config.rules.empty() ? ScoringRules{} : LoadScoringRules(config.rules);
  const std::vector<AuthorCluster> clusters = Disambiguate(corpus, rules, config.threads);
  StageResult result;
  result.outputs.push_back(
      WriteFile(layout.clusters(), [&](std::ostream& o) { WriteClusters(o, clusters); }));
  result.outputs.push_back(WriteFile(layout.disambiguate_dir / "rules.conf",
                                     [&](std::ostream& o) { WriteScoringRules(o, rules); }));
  std::vector<fs::path> inputs = {layout.publications()};
  if (!config.rules.empty()) inputs.push_back(config.rules);
  WriteManifest(config, Subcommand::kDisambiguate, layout.disambiguate_dir, inputs,
                result.outputs);
  return result;
}

StageResult RunDeriveStaff(const RunConfig& config, const ArtifactLayout& layout) {
  Require(layout.clusters(), Subcommand::kDisambiguate);
  Require(layout.registry(), Subcommand::kIngest);
  const std::vector<AuthorCluster> clusters = LoadClusters(layout.clusters());
  const UniversityRegistry registry = LoadRegistry(layout.registry());
  const DerivedStaff staff = DeriveStaff(clusters, registry, config.filters);
  StageResult result;
  result.outputs.push_back(
      WriteFile(layout.staff(), [&](std::ostream& o) { WriteStaff(o, staff, clusters); }));
  result.outputs.push_back(WriteFile(layout.review_queue(),
                                     [&](std::ostream& o) { WriteReviewQueue(o, staff); }));
  WriteManifest(config, Subcommand::kDeriveStaff, layout.staff_dir,
                {layout.clusters(), layout.registry()}, result.outputs);
  return result;
}

StageResult RunScore(const RunConfig& config, const ArtifactLayout& layout) {
  Require(layout.publications(), Subcommand::kIngest);
  const Corpus corpus(LoadPublications(layout.publications(), CorpusOptions(config)));
  const SCScheme scheme = LoadIngestedScheme(layout);
  const std::optional<FieldIncidence> incidence = LoadIngestedIncidence(layout);
  const FieldIncidence* incidence_ptr = incidence ? &*incidence : nullptr;
  std::vector<fs::path> inputs = {layout.publications(), layout.scheme()};
  if (incidence) inputs.push_back(layout.incidence());

  const bool want_sup = config.modes != ModeSelection::kUnsupervised;
  const bool want_unsup = config.modes != ModeSelection::kSupervised;
  std::vector<Subject> sup_subjects;
  std::vector<Subject> unsup_subjects;
  if (want_sup) {
    Require(layout.roster(), Subcommand::kIngest);
    sup_subjects = SupervisedSubjects(LoadRoster(layout.roster(), config.window), corpus,
                                      config.window);
    inputs.push_back(layout.roster());
  }
  if (want_unsup) {
    Require(layout.clusters(), Subcommand::kDisambiguate);
    Require(layout.staff(), Subcommand::kDeriveStaff);
    const std::vector<AuthorCluster> clusters = LoadClusters(layout.clusters());
    unsup_subjects =
        UnsupervisedSubjects(LoadStaff(layout.staff(), clusters), clusters, config.assumed_t);
    inputs.push_back(layout.clusters());
    inputs.push_back(layout.staff());
  }

  ScoringOptions options;
  options.window = config.window;
  options.sc_lookback = config.sc_lookback;
  options.seed = config.seed;
  options.assumed_t = config.assumed_t;
  options.exclusions = config.exclusions;
  options.threads = config.threads;

  std::optional<ModeScores> sup;
  std::optional<ModeScores> unsup;
  std::vector<ExcludedSc> excluded;
  if (want_sup && want_unsup) {
    ScoreSet set = ScoreBothModes(sup_subjects, unsup_subjects, corpus, scheme, incidence_ptr,
                                  options);
    sup = std::move(set.supervised);
    unsup = std::move(set.unsupervised);
    excluded = std::move(set.excluded);
  } else {
    const CitationCells cells = BuildCitationCells(corpus);
    const auto& subjects = want_sup ? sup_subjects : unsup_subjects;
    ModeScores scores = Aggregate(
        ApplyExclusions(ScoreSubjects(subjects, corpus, cells, incidence_ptr, options), scheme,
                        config.exclusions, &excluded),
        scheme, &excluded);
    (want_sup ? sup : unsup) = std::move(scores);
  }

  StageResult result;
  for (const auto& [mode, scores] : {std::pair{Mode::kSupervised, &sup},
                                     std::pair{Mode::kUnsupervised, &unsup}}) {
    if (!*scores) continue;
    const ModeScores& s = **scores;
    result.outputs.push_back(WriteFile(layout.researcher_scores(mode), [&](std::ostream& o) {
      WriteResearcherScores(o, s.researchers);
    }));
    result.outputs.push_back(WriteFile(layout.university_scores(mode), [&](std::ostream& o) {
      WriteUniversityScores(o, s.universities);
    }));
  }
  result.outputs.push_back(WriteFile(layout.excluded_scs(),
                                     [&](std::ostream& o) { WriteExcludedScs(o, excluded); }));
  WriteManifest(config, Subcommand::kScore, layout.score_dir, inputs, result.outputs);
  return result;
}

StageResult RunCompare(const RunConfig& config, const ArtifactLayout& layout) {
  std::vector<fs::path> inputs;
  for (const Mode mode : {Mode::kSupervised, Mode::kUnsupervised}) {
    Require(layout.researcher_scores(mode), Subcommand::kScore);
    Require(layout.university_scores(mode), Subcommand::kScore);
    inputs.push_back(layout.researcher_scores(mode));
    inputs.push_back(layout.university_scores(mode));
  }
  std::map<std::string, std::string> names;
  if (fs::exists(layout.registry())) {
    const UniversityRegistry registry = LoadRegistry(layout.registry());
    for (const University& u : registry.universities()) {
      names[u.university_id] = u.official_name;
    }
    inputs.push_back(layout.registry());
  }
  CompareOptions options;
  options.top_k = config.top_k;
  options.jump_threshold = config.jump_threshold;
  const ComparisonReport report =
      Compare(LoadResearcherScores(layout.researcher_scores(Mode::kSupervised)),
              LoadResearcherScores(layout.researcher_scores(Mode::kUnsupervised)),
              LoadUniversityScores(layout.university_scores(Mode::kSupervised)),
              LoadUniversityScores(layout.university_scores(Mode::kUnsupervised)), options,
              names);
  StageResult result;
  result.warnings = report.warnings;
  result.outputs.push_back(
      WriteFile(layout.report_json(), [&](std::ostream& o) { WriteReportJson(o, report); }));
  result.outputs.push_back(WriteFile(layout.compare_dir / "rank_table.csv",
                                     [&](std::ostream& o) { WriteRankTable(o, report.ranks); }));
  result.outputs.push_back(WriteFile(layout.compare_dir / "quartile_matrix.csv", [&](std::ostream& o) {
    WriteQuartileMatrix(o, report.quartiles);
  }));
  result.outputs.push_back(WriteFile(layout.compare_dir / "distribution_stats.csv",
                                     [&](std::ostream& o) { WriteDistributionStats(o, report); }));
  WriteManifest(config, Subcommand::kCompare, layout.compare_dir, inputs, result.outputs);
  return result;
}

StageResult RunSynth(const RunConfig& config, const ArtifactLayout& layout) {
  std::map<std::string, std::string> values = config.synth;
  values.try_emplace("seed", std::to_string(config.seed));
  values.try_emplace("window", fmt::format("{}:{}", config.window.first, config.window.last));
  values.try_emplace("recency_year", std::to_string(config.filters.recency_year));
  const SynthConfig synth = ParseSynthConfig(values, "synth settings");
  const SynthWorld world = Generate(synth, config.threads);
  WriteWorld(world, layout.synth_dir);
  StageResult result;
  for (const char* name : {"publications.jsonl", "roster.csv", "registry.csv", "scheme.csv",
                           "incidence.csv", "ground_truth.csv", "ground_truth_mentions.csv"}) {
    result.outputs.push_back(layout.synth_dir / name);
  }
  WriteManifest(config, Subcommand::kSynth, layout.synth_dir, {}, result.outputs);
  return result;
}

std::string FormatOptional(const ordered_json& v) {
  return v.is_null() ? std::string("n/a") : fmt::format("{:.3f}", v.get<double>());
}

StageResult RunReport(const RunConfig& config, const ArtifactLayout& layout) {
  Require(layout.report_json(), Subcommand::kCompare);
  std::ifstream in(layout.report_json());
  const ordered_json j = ordered_json::parse(in);
  std::ostringstream text;
  const auto& ranks = j["rank_table"];
  text << fmt::format("universities compared: {}\n", ranks.size());
  const auto& overall = j["correlations"]["overall"];
  text << fmt::format("overall: pearson {} spearman {}\n", FormatOptional(overall["pearson"]),
                      FormatOptional(overall["spearman"]));
  for (const auto& g : j["correlations"]["by_area"]) {
    text << fmt::format("area {} (n={}): pearson {} spearman {}\n", g["group"].get<std::string>(),
                        g["n"].get<int>(), FormatOptional(g["pearson"]),
                        FormatOptional(g["spearman"]));
  }
  const auto& q = j["quartile_matrix"];
  text << "quartiles (rows unsupervised, columns supervised):\n";
  for (const auto& row : q["counts"]) {
    text << fmt::format("  {:>4} {:>4} {:>4} {:>4}\n", row[0].get<int>(), row[1].get<int>(),
                        row[2].get<int>(), row[3].get<int>());
  }
  text << fmt::format("same quartile {}, better unsupervised {}, better supervised {}\n",
                      q["diagonal"].get<int>(), q["above_diagonal"].get<int>(),
                      q["below_diagonal"].get<int>());
  const auto& jumps = j["rank_jumps"];
  text << fmt::format("jumps of >= {} quartiles: {}\n", jumps["threshold"].get<int>(),
                      jumps["universities"].size());
  for (const auto& u : jumps["universities"]) {
    text << fmt::format("  {} Q{} -> Q{}\n", u["university_id"].get<std::string>(),
                        u["q_sup"].get<int>(), u["q_unsup"].get<int>());
  }
  text << fmt::format("max |delta rank| {} (top {} supervised: {})\n",
                      jumps["max_abs_delta_rank"].get<int>(), jumps["top_k"].get<int>(),
                      jumps["max_abs_delta_rank_top_k"].get<int>());
  const auto& dev = j["deviations"];
  text << fmt::format("SC deviations: obs vs mean {}, obs vs median {}\n",
                      FormatOptional(dev["sc"]["pearson_obs_vs_mean"]),
                      FormatOptional(dev["sc"]["pearson_obs_vs_median"]));
  text << fmt::format("university deviations: obs vs FSS_U {}, obs vs rank {}\n",
                      FormatOptional(dev["university"]["pearson_obs_vs_fss_u"]),
                      FormatOptional(dev["university"]["pearson_obs_vs_delta_rank"]));
  StageResult result;
  result.outputs.push_back(
      WriteFile(layout.report_text(), [&](std::ostream& o) { o << text.str(); }));
  WriteManifest(config, Subcommand::kReport, layout.report_dir,
                {layout.report_json()}, result.outputs);
  return result;
}

}  // namespace

std::string_view ToString(Subcommand command) {
  for (const auto& [c, name] : kSubcommands) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Subcommand> ParseSubcommand(std::string_view text) {
  for (const auto& [c, name] : kSubcommands) {
    if (name == text) return c;
  }
  return std::nullopt;
}

void RunConfig::Validate() const {
  if (window.first > window.last) {
    throw ValidationError(fmt::format("window: start {} after end {}", window.first, window.last));
  }
  if (sc_lookback < 1) throw ValidationError("sc_lookback must be positive");
  if (!(assumed_t > 0.0)) throw ValidationError("assumed_t must be positive");
  if (filters.min_clusters < 0) throw ValidationError("min_clusters must be non-negative");
  if (filters.min_age < 0) throw ValidationError("min_age must be non-negative");
  if (exclusions.min_obs < 0) throw ValidationError("min_obs must be non-negative");
  if (threads < 1) throw ValidationError("threads must be at least 1");
  if (top_k < 1) throw ValidationError("top_k must be at least 1");
  if (jump_threshold < 1 || jump_threshold > 3) {
    throw ValidationError("jump_threshold must be in 1..3");
  }
  if (out.empty()) throw ValidationError("out must not be empty");
}

void ApplySettings(const std::map<std::string, std::string>& settings,
                   const std::string& source, RunConfig* c) {
  for (const auto& [key, value] : settings) {
    if (key.rfind("synth.", 0) == 0) {
      c->synth[key.substr(6)] = value;
    } else if (key == "corpus") {
      c->corpus = value;
    } else if (key == "roster") {
      c->roster = value;
    } else if (key == "registry") {
      c->registry = value;
    } else if (key == "scheme") {
      c->scheme = value;
    } else if (key == "incidence") {
      c->incidence = value;
    } else if (key == "rules") {
      c->rules = value;
    } else if (key == "out") {
      c->out = value;
    } else if (key == "window") {
      try {
        c->window = ParseYearRange(value);
      } catch (const Error& e) {
        throw ParseError(source, 0, key, e.what());
      }
    } else if (key == "sc_lookback") {
      c->sc_lookback = ParseIntSetting(key, value, source);
    } else if (key == "assumed_t") {
      c->assumed_t = ParseDoubleSetting(key, value, source);
    } else if (key == "modes") {
      if (value == "both") {
        c->modes = ModeSelection::kBoth;
      } else if (value == "supervised") {
        c->modes = ModeSelection::kSupervised;
      } else if (value == "unsupervised") {
        c->modes = ModeSelection::kUnsupervised;
      } else {
        throw ParseError(source, 0, key, "expected both, supervised or unsupervised");
      }
    } else if (key == "min_clusters") {
      c->filters.min_clusters = ParseIntSetting(key, value, source);
    } else if (key == "min_age") {
      c->filters.min_age = ParseIntSetting(key, value, source);
    } else if (key == "recency") {
      c->filters.recency_year = ParseIntSetting(key, value, source);
    } else if (key == "min_obs") {
      c->exclusions.min_obs = ParseIntSetting(key, value, source);
    } else if (key == "obs_rule") {
      const auto rule = ParseObsRule(value);
      if (!rule) throw ParseError(source, 0, key, "expected literal or strict");
      c->exclusions.rule = *rule;
    } else if (key == "seed") {
      try {
        size_t used = 0;
        c->seed = std::stoull(value, &used);
        if (used != value.size() || value.front() == '-') throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ParseError(source, 0, key, "expected an unsigned integer, got '" + value + "'");
      }
    } else if (key == "threads") {
      c->threads = ParseIntSetting(key, value, source);
    } else if (key == "top_k") {
      c->top_k = ParseIntSetting(key, value, source);
    } else if (key == "jump_threshold") {
      c->jump_threshold = ParseIntSetting(key, value, source);
    } else {
      throw ParseError(source, 0, key, "unknown setting");
    }
  }
}

RunConfig LoadRunConfig(const fs::path& path) {
  auto in = OpenForRead(path);
  RunConfig config;
  ApplySettings(ParseKeyValue(in, path.string()), path.string(), &config);
  return config;
}

MissingArtifactError::MissingArtifactError(fs::path path, Subcommand required)
    : Error(fmt::format("missing {}; run the '{}' subcommand first", path.string(),
                        ToString(required))),
      path_(std::move(path)),
      required_(required) {}

ArtifactLayout::ArtifactLayout(const fs::path& out)
    : synth_dir(out / "synth"),
      ingest_dir(out / "ingest"),
      disambiguate_dir(out / "disambiguate"),
      staff_dir(out / "staff"),
      score_dir(out / "score"),
      compare_dir(out / "compare"),
      report_dir(out / "report") {}

fs::path ArtifactLayout::researcher_scores(Mode mode) const {
  return score_dir / std::string(ToString(mode)) / "scores_researchers.csv";
}

fs::path ArtifactLayout::university_scores(Mode mode) const {
  return score_dir / std::string(ToString(mode)) / "scores_universities.csv";
}

StageResult RunPipeline(const RunConfig& config, Subcommand command) {
  config.Validate();
  const ArtifactLayout layout(config.out);
  switch (command) {
    case Subcommand::kIngest:
      return RunIngest(config, layout);
    case Subcommand::kDisambiguate:
      return RunDisambiguate(config, layout);
    case Subcommand::kDeriveStaff:
      return RunDeriveStaff(config, layout);
    case Subcommand::kScore:
      return RunScore(config, layout);
    case Subcommand::kCompare:
      return RunCompare(config, layout);
    case Subcommand::kSynth:
      return RunSynth(config, layout);
    case Subcommand::kReport:
      return RunReport(config, layout);
  }
  throw Error("unknown subcommand");
}

namespace {

std::string DigestHex(const unsigned char* digest, unsigned int length) {
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  return DigestHex(digest, length);
}

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                    &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (in.gcount() > 0 &&
        EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<size_t>(in.gcount())) != 1) {
      throw Error("SHA-256 computation failed");
    }
  }
  if (in.bad()) throw Error("cannot read " + path.string());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error("SHA-256 computation failed");
  }
  return DigestHex(digest, length);
}

}  // namespace bibperf
