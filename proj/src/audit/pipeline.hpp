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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "categorize/alteration_record.hpp"
#include "db/dataset.hpp"
#include "store/snapshot_store.hpp"

namespace historian {

/// Stable id shared by the root causes of one branch alteration.
[[nodiscard]] std::string alteration_id(const std::string& origin, const std::string& branch,
                                        const std::string& snapshot_from,
                                        const std::string& snapshot_to);

/// Detector then categorizer over one snapshot pair. Records are ordered by
/// branch, then root cause.
[[nodiscard]] std::vector<AlterationRecord> categorize_pair(const Snapshot& from, const Snapshot& to,
                                                            const RepositoryReader& reader,
                                                            const TrackOptions& track = {});

struct DetectOptions {
  std::filesystem::path archive_root;
  unsigned workers = 0;  // 0: hardware concurrency
  bool licenses_all_branches = false;
  TrackOptions track;
};

struct DetectSummary {
  std::size_t origins = 0;
  std::size_t snapshot_pairs = 0;
  std::size_t altered_branches = 0;
  std::size_t altered_commits = 0;
  std::size_t root_causes = 0;
  std::map<std::string, std::size_t> by_category;
  std::map<std::string, std::size_t> by_sub_category;
  std::size_t secret_findings = 0;
  std::map<std::string, std::size_t> license_changes;
  std::vector<std::string> warnings;
};

struct DetectResult {
  std::vector<DatasetRecord> records;
  DetectSummary summary;
};

/// Every snapshot pair of one archive, analyzers included.
[[nodiscard]] DetectResult detect_archive(const OriginArchive& archive, const DetectOptions& options);

/// All archives below `archive_root`, one worker per archive. An archive with
/// fewer than two snapshots only adds a warning.
[[nodiscard]] DetectResult run_detect(const DetectOptions& options);

void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& out);

/// Per-category root cause counts as a summary table.
[[nodiscard]] std::string render_detect_summary(const DetectSummary& summary);

}  // namespace historian
