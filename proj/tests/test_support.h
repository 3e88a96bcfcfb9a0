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

#ifndef BIBPERF_TESTS_TEST_SUPPORT_H_
#define BIBPERF_TESTS_TEST_SUPPORT_H_

#include <unistd.h>

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bibperf/corpus.h"

namespace bibperf::testing {

inline AuthorMention Author(const std::string& last, const std::string& first,
                            std::optional<std::string> orcid = std::nullopt,
                            std::optional<std::string> email = std::nullopt,
                            std::optional<std::string> organization = std::nullopt) {
  AuthorMention m = MakeMention(last + ", " + first, last, first);
  m.orcid = std::move(orcid);
  m.email = std::move(email);
  m.organization = std::move(organization);
  return m;
}

inline PublicationRecord Pub(const std::string& id, int year,
                             std::vector<std::string> scs, long long citations,
                             std::vector<AuthorMention> mentions,
                             const std::string& journal = "Journal") {
  PublicationRecord p;
  p.pub_id = id;
  p.year = year;
  p.subject_categories = std::move(scs);
  p.citation_count = citations;
  p.mentions = std::move(mentions);
  p.journal = journal;
  p.census_date = "2021-03-31";
  return p;
}

// n anonymous co-authors with distinct surnames.
inline std::vector<AuthorMention> Byline(int n, const std::string& prefix = "author") {
  std::vector<AuthorMention> out;
  for (int i = 0; i < n; ++i) out.push_back(Author(prefix + std::to_string(i), "x"));
  return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              ("bibperf_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string DataPath(const std::string& name) {
  return std::string(BIBPERF_DATA_DIR) + "/" + name;
}

}  // namespace bibperf::testing

#endif  // BIBPERF_TESTS_TEST_SUPPORT_H_
