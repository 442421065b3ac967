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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "categorize/alteration_record.hpp"
#include "core/repository_reader.hpp"

namespace historian {

enum class LicenseFamily { kMIT, kApache, kGPL, kLGPL, kAGPL, kBSD2, kBSD3, kMPL, kUnlicense, kISC };

[[nodiscard]] const char* to_string(LicenseFamily family) noexcept;
[[nodiscard]] std::optional<LicenseFamily> license_family_from_string(std::string_view name);
/// GPL, LGPL, AGPL, Apache and MPL carry a version.
[[nodiscard]] bool is_versioned(LicenseFamily family) noexcept;

/// Identity is (family, version). Confidence is carried along but ignored
/// by comparisons, so sets of ids behave as sets of licenses.
struct LicenseId {
  LicenseFamily family = LicenseFamily::kMIT;
  std::optional<std::string> version;
  double confidence = 1.0;

  /// "GPL-3.0", "MIT".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const LicenseId& a, const LicenseId& b) {
    return a.family == b.family && a.version == b.version;
  }
  friend bool operator<(const LicenseId& a, const LicenseId& b) {
    if (a.family != b.family) return a.family < b.family;
    return a.version < b.version;
  }
};

using LicenseSet = std::set<LicenseId>;

/// Parses "GPL-3.0", "MIT", "BSD-2". Throws Error(kInvalidArgument).
[[nodiscard]] LicenseId parse_license_id(std::string_view text);

class LicenseDetector {
 public:
  virtual ~LicenseDetector() = default;
  /// Licenses whose confidence is above the gate.
  [[nodiscard]] virtual LicenseSet detect(std::string_view text) const = 0;
};

/// Template matcher. Texts are normalized (case folded, copyright lines
/// dropped, punctuation to spaces) and cut into 5-token shingles; a template
/// scores the fraction of its shingles present in the text. Versioned
/// families must also name their version ("version 2", "version 2 1").
/// When templates overlap (GPL inside AGPL, BSD-2 inside BSD-3) the better
/// scoring, then larger, template claims the shared shingles and a later
/// candidate whose matches are mostly claimed already is dropped.
class LicenseClassifier : public LicenseDetector {
 public:
  static constexpr double kGate = 0.90;
  static constexpr std::size_t kShingle = 5;

  /// The templates shipped in data/licenses.
  static const LicenseClassifier& builtin();
  /// `<family>[-<version>].txt` files. Throws Error(kIo / kInvalidArgument).
  static LicenseClassifier from_directory(const std::filesystem::path& dir);

  void add_template(const LicenseId& id, std::string_view text);

  [[nodiscard]] LicenseSet detect(std::string_view text) const override;
  /// Score of every template, gate not applied. Same order as templates().
  [[nodiscard]] std::vector<double> scores(std::string_view text) const;
  [[nodiscard]] std::vector<LicenseId> templates() const;
  [[nodiscard]] const std::string& template_text(std::size_t index) const {
    return templates_.at(index).text;
  }

 private:
  struct Template {
    LicenseId id;
    std::string text;
    std::vector<std::uint64_t> shingles;  // sorted, unique
    std::vector<std::string> version_phrase;
  };
  std::vector<Template> templates_;
};

[[nodiscard]] std::vector<std::string> normalize_license_text(std::string_view text);

[[nodiscard]] LicenseSet detect_licenses(std::string_view text);

enum class LicenseChangeClass { kLicenseUpdate, kPartialChange, kFullChange, kNoChange, kUndetermined };

[[nodiscard]] const char* to_string(LicenseChangeClass change) noexcept;
[[nodiscard]] std::optional<LicenseChangeClass> license_change_from_string(std::string_view name);

[[nodiscard]] LicenseChangeClass classify_license_change(const LicenseSet& before,
                                                         const LicenseSet& after);

/// Case-folded name contains "license" or "licence".
[[nodiscard]] bool is_license_filename(std::string_view basename);

struct LicenseFinding {
  std::string origin;
  std::string branch;
  ObjectId root_cause;
  std::string path;
  LicenseSet before;
  LicenseSet after;
  LicenseChangeClass change_class = LicenseChangeClass::kUndetermined;
};

/// License files among the Modified fates of Dir records, compared between
/// the root cause's content and the replacement content.
[[nodiscard]] std::vector<LicenseFinding> scan_license_changes(
    const std::vector<AlterationRecord>& records, const RepositoryReader& reader,
    bool main_only = true, const LicenseDetector& detector = LicenseClassifier::builtin());

}  // namespace historian
