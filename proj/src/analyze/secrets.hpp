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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "categorize/alteration_record.hpp"
#include "core/repository_reader.hpp"

namespace historian {

enum class PatternKind { kFilenameExact, kFilenameSubstring, kContentMarker };

struct SecretPattern {
  PatternKind kind = PatternKind::kFilenameExact;
  std::string pattern;
  std::string label;

  friend bool operator==(const SecretPattern&, const SecretPattern&) = default;
};

[[nodiscard]] const char* to_string(PatternKind kind) noexcept;

/// Ordered pattern list. Exact file names win over substrings; within a
/// kind the first listed pattern wins.
class SecretPatternSet {
 public:
  /// The list shipped in data/secret_patterns.tsv.
  static const SecretPatternSet& builtin();
  /// `kind<TAB>pattern<TAB>label` lines, "#" comments and blank lines
  /// skipped. Throws Error(kMalformedRecord) with the line number.
  static SecretPatternSet parse(std::string_view text);
  static SecretPatternSet load(const std::filesystem::path& path);

  [[nodiscard]] std::optional<SecretPattern> match_filename(std::string_view basename) const;
  [[nodiscard]] std::optional<SecretPattern> match_content(std::string_view bytes) const;

  [[nodiscard]] const std::vector<SecretPattern>& patterns() const noexcept { return patterns_; }
  [[nodiscard]] std::size_t longest_marker() const noexcept { return longest_marker_; }

 private:
  std::vector<SecretPattern> patterns_;
  std::size_t longest_marker_ = 0;
};

[[nodiscard]] std::optional<SecretPattern> is_secret_filename(std::string_view basename);
[[nodiscard]] std::optional<SecretPattern> detect_private_key_content(std::string_view bytes);

/// Incremental content-marker search. Keeps the last (longest marker - 1)
/// bytes between chunks so markers straddling a boundary are still seen.
class ContentMarkerScanner {
 public:
  explicit ContentMarkerScanner(const SecretPatternSet& patterns = SecretPatternSet::builtin());
  void feed(std::string_view chunk);
  [[nodiscard]] const std::optional<SecretPattern>& match() const noexcept { return match_; }

 private:
  const SecretPatternSet& patterns_;
  std::string carry_;
  std::optional<SecretPattern> match_;
};

enum class MatchVia { kFilename, kContent };

struct SecretFinding {
  std::string origin;
  std::string branch;
  ObjectId root_cause;
  std::string path;
  SecretPattern matched;
  MatchVia via = MatchVia::kFilename;
};

/// One finding per (record, removed path, matching route). Only files whose
/// fate is Removed are inspected; content is read when the blob resolves.
[[nodiscard]] std::vector<SecretFinding> scan_secret_removals(
    const std::vector<AlterationRecord>& records, const RepositoryReader& reader,
    const SecretPatternSet& patterns = SecretPatternSet::builtin());

[[nodiscard]] std::string_view basename_of(std::string_view path) noexcept;

}  // namespace historian
