// Copyright 2026 The git-historian Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "core/memory_repository.hpp"
#include "core/model.hpp"
#include "core/process.hpp"
#include "corpus/generator.hpp"
#include "db/dataset.hpp"

namespace historian::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "gh");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
  [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// A non-bare repository driven through the git CLI with pinned identities
/// and dates, so object ids are reproducible.
class WorkRepo {
 public:
  explicit WorkRepo(std::filesystem::path dir);

  /// `git <args>` in the work tree; throws on failure.
  std::string git(const std::vector<std::string>& args) const;
  void write(const std::string& path, const std::string& content) const;
  void remove(const std::string& path) const;
  /// Stages everything and commits at `when` (author and committer date).
  ObjectId commit(const std::string& message, std::int64_t when) const;
  [[nodiscard]] ObjectId rev(const std::string& what) const;
  [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Extra environment applied to every git call (dates, identities).
  std::map<std::string, std::string> env;

 private:
  std::filesystem::path dir_;
};

/// In-memory commit with fixed identities; `when` drives both dates.
ObjectId add_commit(MemoryRepository& repo, std::vector<ObjectId> parents,
                    const std::map<std::string, std::string>& files, const std::string& message,
                    std::int64_t when = 1700000000);

[[nodiscard]] Snapshot make_snapshot(const std::string& id, std::int64_t at, RefMap refs,
                                     const std::string& origin = "https://example.test/repo");

/// Random rewrite histories pushed through detector and categorizer until
/// `target` root causes have been categorized. Each violated taxonomy rule is
/// reported as one message.
struct FuzzReport {
  std::size_t categorizations = 0;
  std::map<std::string, std::size_t> by_sub_category;
  std::vector<std::string> violations;
};
FuzzReport fuzz_categorizations(std::uint64_t seed, std::size_t target);

/// Disagreements between pipeline records for one scenario, its ground truth
/// and (when given) the brute-force oracle. Empty means full agreement.
std::vector<std::string> compare_with_truth(const std::vector<DatasetRecord>& records, const GroundTruth& truth,
                                            const OracleResult* oracle = nullptr);

/// Runs the built CLI with extra environment variables.
ProcessResult run_cli(const std::vector<std::string>& args,
                      const std::map<std::string, std::string>& env = {},
                      const std::filesystem::path& cwd = {});

[[nodiscard]] std::filesystem::path cli_path();
[[nodiscard]] std::filesystem::path source_dir();

}  // namespace historian::testing
