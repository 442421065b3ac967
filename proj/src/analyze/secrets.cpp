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

#include "analyze/secrets.hpp"

#include <algorithm>
#include <cctype>

#include "analyze/embedded_data.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"

namespace historian {

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

const char* to_string(PatternKind kind) noexcept {
  switch (kind) {
    case PatternKind::kFilenameExact: return "filename_exact";
    case PatternKind::kFilenameSubstring: return "filename_substring";
    case PatternKind::kContentMarker: return "content_marker";
  }
  return "filename_exact";
}

std::string_view basename_of(std::string_view path) noexcept {
  auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

SecretPatternSet SecretPatternSet::parse(std::string_view text) {
  SecretPatternSet set;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedRecord,
                  "secret pattern line " + std::to_string(line_no) + ": expected 3 tab-separated fields",
                  line_no);
    }
    std::string_view kind = line.substr(0, tab1);
    SecretPattern pattern;
    pattern.pattern = std::string(line.substr(tab1 + 1, tab2 - tab1 - 1));
    pattern.label = std::string(line.substr(tab2 + 1));
    if (kind == "filename_exact") {
      pattern.kind = PatternKind::kFilenameExact;
    } else if (kind == "filename_substring") {
      pattern.kind = PatternKind::kFilenameSubstring;
    } else if (kind == "content_marker") {
      pattern.kind = PatternKind::kContentMarker;
      set.longest_marker_ = std::max(set.longest_marker_, pattern.pattern.size());
    } else {
      throw Error(ErrorCode::kMalformedRecord,
                  "secret pattern line " + std::to_string(line_no) + ": unknown kind '" +
                      std::string(kind) + "'",
                  line_no);
    }
    if (pattern.pattern.empty()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "secret pattern line " + std::to_string(line_no) + ": empty pattern", line_no);
    }
    if (pattern.kind != PatternKind::kContentMarker) pattern.pattern = fold(pattern.pattern);
    set.patterns_.push_back(std::move(pattern));
  }
  return set;
}

SecretPatternSet SecretPatternSet::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

const SecretPatternSet& SecretPatternSet::builtin() {
  static const SecretPatternSet set = parse(embedded::kSecretPatterns);
  return set;
}

std::optional<SecretPattern> SecretPatternSet::match_filename(std::string_view basename) const {
  const std::string name = fold(basename);
  for (const auto& p : patterns_) {
    if (p.kind == PatternKind::kFilenameExact && name == p.pattern) return p;
  }
  if (name.ends_with(".pub")) return std::nullopt;
  for (const auto& p : patterns_) {
    if (p.kind == PatternKind::kFilenameSubstring && name.find(p.pattern) != std::string::npos) {
      return p;
    }
  }
  return std::nullopt;
}

std::optional<SecretPattern> SecretPatternSet::match_content(std::string_view bytes) const {
  for (const auto& p : patterns_) {
    if (p.kind == PatternKind::kContentMarker && bytes.find(p.pattern) != std::string_view::npos) {
      return p;
    }
  }
  return std::nullopt;
}

std::optional<SecretPattern> is_secret_filename(std::string_view basename) {
  return SecretPatternSet::builtin().match_filename(basename);
}

std::optional<SecretPattern> detect_private_key_content(std::string_view bytes) {
  return SecretPatternSet::builtin().match_content(bytes);
}

ContentMarkerScanner::ContentMarkerScanner(const SecretPatternSet& patterns)
    : patterns_(patterns) {}

void ContentMarkerScanner::feed(std::string_view chunk) {
  if (match_) return;
  std::string window = carry_;
  window.append(chunk);
  match_ = patterns_.match_content(window);
  const std::size_t keep = patterns_.longest_marker() > 0 ? patterns_.longest_marker() - 1 : 0;
  carry_ = window.size() > keep ? window.substr(window.size() - keep) : window;
}

std::vector<SecretFinding> scan_secret_removals(const std::vector<AlterationRecord>& records,
                                                const RepositoryReader& reader,
                                                const SecretPatternSet& patterns) {
  std::vector<SecretFinding> findings;
  for (const AlterationRecord& record : records) {
    const auto* dir = std::get_if<DirChange>(&record.category);
    if (dir == nullptr) continue;
    for (const FileFate& fate : dir->fates) {
      if (fate.outcome != FileOutcome::kRemoved) continue;
      auto emit = [&](const SecretPattern& p, MatchVia via) {
        findings.push_back({record.origin, record.branch.raw_name, record.root_cause, fate.path,
                            p, via});
      };
      if (auto by_name = patterns.match_filename(basename_of(fate.path))) {
        emit(*by_name, MatchVia::kFilename);
      }
      if (auto content = reader.blob(fate.content_id)) {
        if (auto by_content = patterns.match_content(*content)) {
          emit(*by_content, MatchVia::kContent);
        }
      }
    }
  }
  return findings;
}

}  // namespace historian
