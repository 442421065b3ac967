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

#include "analyze/licenses.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

#include "analyze/embedded_data.hpp"
#include "analyze/secrets.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"

namespace historian {

namespace {

constexpr LicenseFamily kFamilies[] = {
    LicenseFamily::kMIT,  LicenseFamily::kApache, LicenseFamily::kGPL,
    LicenseFamily::kLGPL, LicenseFamily::kAGPL,   LicenseFamily::kBSD2,
    LicenseFamily::kBSD3, LicenseFamily::kMPL,    LicenseFamily::kUnlicense,
    LicenseFamily::kISC};

std::uint64_t shingle_hash(const std::vector<std::string>& tokens, std::size_t at) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = at; i < at + LicenseClassifier::kShingle; ++i) {
    for (unsigned char c : tokens[i]) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::uint64_t> shingles_of(const std::vector<std::string>& tokens) {
  std::vector<std::uint64_t> out;
  if (tokens.size() < LicenseClassifier::kShingle) return out;
  out.reserve(tokens.size() - LicenseClassifier::kShingle + 1);
  for (std::size_t i = 0; i + LicenseClassifier::kShingle <= tokens.size(); ++i) {
    out.push_back(shingle_hash(tokens, i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> version_phrase(const std::optional<std::string>& version) {
  if (!version) return {};
  std::vector<std::string> phrase{"version"};
  const auto dot = version->find('.');
  phrase.push_back(version->substr(0, dot));
  if (dot != std::string::npos) {
    const std::string minor = version->substr(dot + 1);
    if (!minor.empty() && minor.find_first_not_of('0') != std::string::npos) {
      phrase.push_back(minor);
    }
  }
  return phrase;
}

bool contains_phrase(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& phrase) {
  if (phrase.empty()) return true;
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

LicenseId id_from_template_name(std::string_view file_name) {
  if (file_name.ends_with(".txt")) file_name.remove_suffix(4);
  return parse_license_id(file_name);
}

}  // namespace

const char* to_string(LicenseFamily family) noexcept {
  switch (family) {
    case LicenseFamily::kMIT: return "MIT";
    case LicenseFamily::kApache: return "Apache";
    case LicenseFamily::kGPL: return "GPL";
    case LicenseFamily::kLGPL: return "LGPL";
    case LicenseFamily::kAGPL: return "AGPL";
    case LicenseFamily::kBSD2: return "BSD-2";
    case LicenseFamily::kBSD3: return "BSD-3";
    case LicenseFamily::kMPL: return "MPL";
    case LicenseFamily::kUnlicense: return "Unlicense";
    case LicenseFamily::kISC: return "ISC";
  }
  return "MIT";
}

std::optional<LicenseFamily> license_family_from_string(std::string_view name) {
  for (LicenseFamily f : kFamilies) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

bool is_versioned(LicenseFamily family) noexcept {
  switch (family) {
    case LicenseFamily::kGPL:
    case LicenseFamily::kLGPL:
    case LicenseFamily::kAGPL:
    case LicenseFamily::kApache:
    case LicenseFamily::kMPL:
      return true;
    default:
      return false;
  }
}

std::string LicenseId::str() const {
  std::string out = to_string(family);
  if (version) out += "-" + *version;
  return out;
}

LicenseId parse_license_id(std::string_view text) {
  // Longest family name that is followed by '-' or the end wins, so "LGPL-2.1"
  // is not read as "L" + "GPL" and "BSD-3" keeps its suffix.
  std::optional<LicenseFamily> best;
  std::size_t best_len = 0;
  for (LicenseFamily f : kFamilies) {
    std::string_view name = to_string(f);
    if (!text.starts_with(name)) continue;
    if (text.size() > name.size() && text[name.size()] != '-') continue;
    if (name.size() > best_len) {
      best = f;
      best_len = name.size();
    }
  }
  if (!best) {
    throw Error(ErrorCode::kInvalidArgument, "unknown license id '" + std::string(text) + "'");
  }
  LicenseId id;
  id.family = *best;
  std::string_view rest = text.substr(best_len);
  if (!rest.empty()) id.version = std::string(rest.substr(1));
  if (is_versioned(id.family) != id.version.has_value() || (id.version && id.version->empty())) {
    throw Error(ErrorCode::kInvalidArgument,
                "license id '" + std::string(text) + "': version required for exactly the "
                "GPL, LGPL, AGPL, Apache and MPL families");
  }
  return id;
}

std::vector<std::string> normalize_license_text(std::string_view text) {
  std::vector<std::string> tokens;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    std::string lowered;
    lowered.reserve(line.size());
    for (unsigned char c : line) lowered.push_back(static_cast<char>(std::tolower(c)));
    const auto first = lowered.find_first_not_of(" \t\r\f\v");
    if (first != std::string::npos && lowered.compare(first, 9, "copyright") == 0) continue;
    std::string current;
    for (unsigned char c : lowered) {
      // Bytes >= 0x80 are treated as separators, which is all the decoding
      // the matcher needs.
      if (c < 0x80 && std::isalnum(c)) {
        current.push_back(static_cast<char>(c));
      } else if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  return tokens;
}

void LicenseClassifier::add_template(const LicenseId& id, std::string_view text) {
  Template t;
  t.id = id;
  t.id.confidence = 1.0;
  t.text = std::string(text);
  t.shingles = shingles_of(normalize_license_text(text));
  if (t.shingles.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "license template " + id.str() + " is too short");
  }
  t.version_phrase = version_phrase(id.version);
  templates_.push_back(std::move(t));
}

const LicenseClassifier& LicenseClassifier::builtin() {
  static const LicenseClassifier classifier = [] {
    LicenseClassifier c;
    for (std::size_t i = 0; i < embedded::kLicenseTemplateCount; ++i) {
      const auto& file = embedded::kLicenseTemplates[i];
      c.add_template(id_from_template_name(file.name), file.content);
    }
    return c;
  }();
  return classifier;
}

LicenseClassifier LicenseClassifier::from_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  LicenseClassifier c;
  for (const auto& path : files) {
    c.add_template(id_from_template_name(path.filename().string()), read_file(path));
  }
  return c;
}

std::vector<LicenseId> LicenseClassifier::templates() const {
  std::vector<LicenseId> ids;
  for (const auto& t : templates_) ids.push_back(t.id);
  return ids;
}

std::vector<double> LicenseClassifier::scores(std::string_view text) const {
  const auto tokens = normalize_license_text(text);
  const auto shingles = shingles_of(tokens);
  std::vector<double> out;
  for (const auto& t : templates_) {
    std::size_t hit = 0;
    for (std::uint64_t s : t.shingles) {
      if (std::binary_search(shingles.begin(), shingles.end(), s)) ++hit;
    }
    out.push_back(static_cast<double>(hit) / static_cast<double>(t.shingles.size()));
  }
  return out;
}

LicenseSet LicenseClassifier::detect(std::string_view text) const {
  const auto tokens = normalize_license_text(text);
  const auto shingles = shingles_of(tokens);
  if (shingles.empty()) return {};

  struct Candidate {
    std::size_t index;
    double score;
    std::vector<std::uint64_t> matched;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const Template& t = templates_[i];
    Candidate c{i, 0.0, {}};
    std::set_intersection(t.shingles.begin(), t.shingles.end(), shingles.begin(), shingles.end(),
                          std::back_inserter(c.matched));
    c.score = static_cast<double>(c.matched.size()) / static_cast<double>(t.shingles.size());
    if (c.score > kGate && contains_phrase(tokens, t.version_phrase)) {
      candidates.push_back(std::move(c));
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto sa = templates_[a.index].shingles.size();
    const auto sb = templates_[b.index].shingles.size();
    if (sa != sb) return sa > sb;
    return a.index < b.index;
  });

  LicenseSet result;
  std::unordered_set<std::uint64_t> claimed;
  for (const Candidate& c : candidates) {
    std::size_t already = 0;
    for (std::uint64_t s : c.matched) already += claimed.count(s);
    if (2 * already >= c.matched.size()) continue;
    claimed.insert(c.matched.begin(), c.matched.end());
    LicenseId id = templates_[c.index].id;
    id.confidence = c.score;
    result.insert(id);
  }
  return result;
}

LicenseSet detect_licenses(std::string_view text) {
  return LicenseClassifier::builtin().detect(text);
}

const char* to_string(LicenseChangeClass change) noexcept {
  switch (change) {
    case LicenseChangeClass::kLicenseUpdate: return "LicenseUpdate";
    case LicenseChangeClass::kPartialChange: return "PartialChange";
    case LicenseChangeClass::kFullChange: return "FullChange";
    case LicenseChangeClass::kNoChange: return "NoChange";
    case LicenseChangeClass::kUndetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::optional<LicenseChangeClass> license_change_from_string(std::string_view name) {
  for (auto c : {LicenseChangeClass::kLicenseUpdate, LicenseChangeClass::kPartialChange,
                 LicenseChangeClass::kFullChange, LicenseChangeClass::kNoChange,
                 LicenseChangeClass::kUndetermined}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

LicenseChangeClass classify_license_change(const LicenseSet& before, const LicenseSet& after) {
  if (before.empty() || after.empty()) return LicenseChangeClass::kUndetermined;
  if (before == after) return LicenseChangeClass::kNoChange;
  std::set<LicenseFamily> fb, fa;
  for (const auto& id : before) fb.insert(id.family);
  for (const auto& id : after) fa.insert(id.family);
  if (fb == fa) return LicenseChangeClass::kLicenseUpdate;
  const bool disjoint = std::none_of(fb.begin(), fb.end(), [&](LicenseFamily f) { return fa.contains(f); });
  return disjoint ? LicenseChangeClass::kFullChange : LicenseChangeClass::kPartialChange;
}

bool is_license_filename(std::string_view basename) {
  std::string folded(basename);
  std::transform(folded.begin(), folded.end(), folded.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return folded.find("license") != std::string::npos || folded.find("licence") != std::string::npos;
}

std::vector<LicenseFinding> scan_license_changes(const std::vector<AlterationRecord>& records,
                                                 const RepositoryReader& reader, bool main_only,
                                                 const LicenseDetector& detector) {
  std::vector<LicenseFinding> findings;
  for (const AlterationRecord& record : records) {
    if (main_only && record.branch.kind != BranchClass::kMain) continue;
    const auto* dir = std::get_if<DirChange>(&record.category);
    if (dir == nullptr) continue;
    for (const FileFate& fate : dir->fates) {
      if (fate.outcome != FileOutcome::kModified || !fate.replacement_content) continue;
      if (!is_license_filename(basename_of(fate.path))) continue;
      LicenseFinding finding;
      finding.origin = record.origin;
      finding.branch = record.branch.raw_name;
      finding.root_cause = record.root_cause;
      finding.path = fate.path;
      if (auto text = reader.blob(fate.content_id)) finding.before = detector.detect(*text);
      if (auto text = reader.blob(*fate.replacement_content)) finding.after = detector.detect(*text);
      finding.change_class = classify_license_change(finding.before, finding.after);
      findings.push_back(std::move(finding));
    }
  }
  return findings;
}

}  // namespace historian
