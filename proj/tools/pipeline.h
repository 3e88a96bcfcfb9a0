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

#ifndef BIBPERF_TOOLS_PIPELINE_H_
#define BIBPERF_TOOLS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bibperf/corpus.h"
#include "bibperf/error.h"
#include "bibperf/fss.h"
#include "bibperf/staff.h"
#include "bibperf/synth.h"

namespace bibperf {

enum class Subcommand {
  kIngest,
  kDisambiguate,
  kDeriveStaff,
  kScore,
  kCompare,
  kSynth,
  kReport,
};

std::string_view ToString(Subcommand command);
std::optional<Subcommand> ParseSubcommand(std::string_view text);

enum class ModeSelection { kBoth, kSupervised, kUnsupervised };

struct RunConfig {
  // Inputs; when empty, the matching file under <out>/synth is used.
  std::filesystem::path corpus;
  std::filesystem::path roster;
  std::filesystem::path registry;
  std::filesystem::path scheme;
  std::filesystem::path incidence;
  std::filesystem::path rules;  // empty: built-in scoring rules
  std::filesystem::path out = "out";

  YearRange window;
  int sc_lookback = 19;
  double assumed_t = 5.0;
  ModeSelection modes = ModeSelection::kBoth;
  FilterParams filters;
  ExclusionParams exclusions;
  uint64_t seed = 42;
  int threads = 1;
  int top_k = 11;
  int jump_threshold = 2;

  // "synth.<field>" keys of the config file.
  std::map<std::string, std::string> synth;

  // Throws ValidationError naming the offending key.
  void Validate() const;
};

// Applies key=value settings (config file or flag overrides) in order.
// Unknown keys raise ParseError.
void ApplySettings(const std::map<std::string, std::string>& settings,
                   const std::string& source, RunConfig* config);

RunConfig LoadRunConfig(const std::filesystem::path& path);

// Raised when a stage's input was never produced.
class MissingArtifactError : public Error {
 public:
  MissingArtifactError(std::filesystem::path path, Subcommand required);

  const std::filesystem::path& path() const { return path_; }
  Subcommand required() const { return required_; }

 private:
  std::filesystem::path path_;
  Subcommand required_;
};

// Stage directories under RunConfig::out.
struct ArtifactLayout {
  explicit ArtifactLayout(const std::filesystem::path& out);

  std::filesystem::path synth_dir;
  std::filesystem::path ingest_dir;
  std::filesystem::path disambiguate_dir;
  std::filesystem::path staff_dir;
  std::filesystem::path score_dir;
  std::filesystem::path compare_dir;
  std::filesystem::path report_dir;

  std::filesystem::path publications() const { return ingest_dir / "publications.jsonl"; }
  std::filesystem::path roster() const { return ingest_dir / "roster.csv"; }
  std::filesystem::path registry() const { return ingest_dir / "registry.csv"; }
  std::filesystem::path scheme() const { return ingest_dir / "scheme.csv"; }
  std::filesystem::path incidence() const { return ingest_dir / "incidence.csv"; }
  std::filesystem::path clusters() const { return disambiguate_dir / "clusters.jsonl"; }
  std::filesystem::path staff() const { return staff_dir / "staff.csv"; }
  std::filesystem::path review_queue() const { return staff_dir / "review_queue.csv"; }
  std::filesystem::path researcher_scores(Mode mode) const;
  std::filesystem::path university_scores(Mode mode) const;
  std::filesystem::path excluded_scs() const { return score_dir / "excluded_scs.csv"; }
  std::filesystem::path report_json() const { return compare_dir / "report.json"; }
  std::filesystem::path report_text() const { return report_dir / "report.txt"; }
};

struct StageResult {
  std::vector<std::filesystem::path> outputs;
  std::vector<std::string> warnings;
};

// Runs one stage, writing its files and <stage dir>/run_manifest.json.
StageResult RunPipeline(const RunConfig& config, Subcommand command);

// Lower-case hex SHA-256 of a file's bytes / of a string.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view bytes);

}  // namespace bibperf

#endif  // BIBPERF_TOOLS_PIPELINE_H_
