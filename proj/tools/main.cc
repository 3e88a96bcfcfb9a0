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

// bibperf: staff-derivation and FSS ranking pipeline.
//
//   bibperf synth --seed 42 --out run
//   bibperf ingest --out run
//   bibperf disambiguate --out run
//   bibperf derive-staff --out run
//   bibperf score --out run
//   bibperf compare --out run
//   bibperf report --out run
//
// Failures print one JSON object on stderr and exit nonzero.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bibperf/csv.h"
#include "json.hpp"
#include "pipeline.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMissingArtifact = 3;

void PrintError(const ordered_json& error) { std::cerr << error.dump() << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staff derivation, FSS scoring and ranking comparison"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> extra;
  app.add_option("--config", config_path, "Key-value run configuration file");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const std::vector<Flag> flags = {
      {"--seed", "seed", "Random seed (u64)"},
      {"--window", "window", "Evaluation window, e.g. 2015:2019"},
      {"--min-clusters", "min_clusters", "Minimum clusters per university"},
      {"--min-age", "min_age", "Minimum academic age"},
      {"--recency", "recency", "Required last publication year"},
      {"--min-obs", "min_obs", "Minimum researchers per SC"},
      {"--obs-rule", "obs_rule", "literal | strict"},
      {"--threads", "threads", "Worker threads"},
      {"--out", "out", "Output directory"},
      {"--corpus", "corpus", "Publications JSONL"},
      {"--roster", "roster", "Faculty roster CSV"},
      {"--registry", "registry", "University registry CSV"},
      {"--scheme", "scheme", "Subject-category scheme CSV"},
      {"--incidence", "incidence", "Field-code to SC incidence CSV"},
      {"--rules", "rules", "Disambiguation scoring rules"},
      {"--modes", "modes", "both | supervised | unsupervised"},
      {"--top-k", "top_k", "Top-k used for the rank-shift bound"},
  };
  std::vector<std::string> values(flags.size());
  for (size_t i = 0; i < flags.size(); ++i) {
    app.add_option(flags[i].name, values[i], flags[i].help);
  }
  app.add_option("--set", extra, "Extra key=value setting (repeatable), e.g. synth.homonym_rate=0.05");

  std::string command_name;
  for (const char* name :
       {"ingest", "disambiguate", "derive-staff", "score", "compare", "synth", "report"}) {
    app.add_subcommand(name)->callback([&command_name, name] { command_name = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError({{"error", "usage"}, {"message", e.what()}});
    return kExitUsage;
  }

  try {
    for (size_t i = 0; i < flags.size(); ++i) {
      if (app.count(flags[i].name) > 0) overrides[flags[i].key] = values[i];
    }
    for (const std::string& kv : extra) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw bibperf::ParseError("--set", 0, kv, "expected key=value");
      }
      overrides[bibperf::Trim(kv.substr(0, eq))] = bibperf::Trim(kv.substr(eq + 1));
    }
    bibperf::RunConfig config =
        config_path.empty() ? bibperf::RunConfig{} : bibperf::LoadRunConfig(config_path);
    bibperf::ApplySettings(overrides, "command line", &config);
    const bibperf::Subcommand command = *bibperf::ParseSubcommand(command_name);
    const bibperf::StageResult result = bibperf::RunPipeline(config, command);
    for (const std::string& w : result.warnings) {
      std::cerr << ordered_json{{"warning", w}}.dump() << '\n';
    }
    ordered_json outputs = ordered_json::array();
    for (const auto& p : result.outputs) outputs.push_back(p.generic_string());
    std::cout << ordered_json{{"subcommand", command_name}, {"outputs", outputs}}.dump() << '\n';
    return 0;
  } catch (const bibperf::MissingArtifactError& e) {
    PrintError({{"error", "missing_artifact"},
                {"subcommand", command_name},
                {"requires", bibperf::ToString(e.required())},
                {"path", e.path().generic_string()},
                {"message", e.what()}});
    return kExitMissingArtifact;
  } catch (const bibperf::ParseError& e) {
    PrintError({{"error", "parse_error"},
                {"subcommand", command_name},
                {"source", e.source()},
                {"line", e.line()},
                {"field", e.field()},
                {"message", e.what()}});
    return kExitError;
  } catch (const bibperf::ValidationError& e) {
    PrintError({{"error", "validation_error"}, {"subcommand", command_name}, {"message", e.what()}});
    return kExitError;
  } catch (const std::exception& e) {
    PrintError({{"error", "error"}, {"subcommand", command_name}, {"message", e.what()}});
    return kExitError;
  }
}
