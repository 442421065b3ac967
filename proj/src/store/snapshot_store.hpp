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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "core/model.hpp"

namespace historian {

/// Scheme stripped, runs of non-alphanumerics collapsed to "_":
/// "https://github.com/example/project" -> "github_com_example_project".
[[nodiscard]] std::string sanitize_origin(std::string_view origin);

/// One archived origin. The object store under `objects_dir()` only ever
/// grows: each snapshot pins its refs under refs/historian/snapshots/<id>/,
/// so commits dropped upstream stay readable.
struct OriginArchive {
  std::string origin;
  std::filesystem::path storage_path;
  std::vector<Snapshot> snapshots;  // strictly ascending captured_at

  [[nodiscard]] std::filesystem::path objects_dir() const { return storage_path / "objects"; }
  [[nodiscard]] std::filesystem::path snapshots_dir() const { return storage_path / "snapshots"; }
};

/// Opens `<root>/<sanitized-origin>`, initializing it on first use.
OriginArchive open_archive(const std::filesystem::path& root, const std::string& origin);

/// Every initialized archive below `root`, sorted by origin.
std::vector<OriginArchive> list_archives(const std::filesystem::path& root);

struct CaptureOptions {
  /// Where to fetch from; defaults to the origin URL itself.
  std::string fetch_url;
  /// Fixed capture time. Must exceed the last snapshot's time
  /// (kNonMonotonicCapture otherwise). Unset: wall clock, waiting out ties.
  std::optional<std::int64_t> captured_at;
};

/// True for the ref namespaces a snapshot records: refs/heads/*,
/// refs/tags/* and refs/pull/<n>/head.
[[nodiscard]] bool is_captured_ref(std::string_view ref);

/// Fetches every captured ref and its objects into the archive and records a
/// new snapshot. Captures of one archive are serialized with a file lock.
Snapshot capture(OriginArchive& archive, const CaptureOptions& options = {});

/// Consecutive (earlier, later) pairs; kInsufficientSnapshots below two.
std::vector<std::pair<Snapshot, Snapshot>> list_snapshot_pairs(const OriginArchive& archive);

[[nodiscard]] std::string compute_snapshot_id(const std::string& origin,
                                              std::int64_t captured_at,
                                              const RefMap& refs);

[[nodiscard]] nlohmann::json manifest_to_json(const Snapshot& snapshot);
/// Throws Error(kMalformedRecord) on schema violations.
[[nodiscard]] Snapshot manifest_from_json(const nlohmann::json& json);

/// Newline-delimited manifests, one per snapshot, archives in given order.
void export_dataset(const std::vector<OriginArchive>& archives,
                    const std::filesystem::path& out);

/// Groups manifests by origin (first-seen order), snapshots sorted by
/// capture time. storage_path is resolved against `archive_root` when given.
std::vector<OriginArchive> import_dataset(const std::filesystem::path& in,
                                          const std::filesystem::path& archive_root = {});

}  // namespace historian
