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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "db/dataset.hpp"

struct sqlite3;

namespace historian {

enum class BranchFilter { kMainOnly, kDevOnly, kAll };

/// "main", "dev", "all".
[[nodiscard]] const char* to_string(BranchFilter filter) noexcept;
[[nodiscard]] std::optional<BranchFilter> branch_filter_from_string(std::string_view name);

struct StoredFileModification {
  std::string file_path;
  std::string status;

  friend bool operator==(const StoredFileModification&, const StoredFileModification&) = default;
};

struct StoredAlteration {
  std::int64_t id = 0;
  std::string origin;
  std::string raw_branch;
  std::string unified_branch;
  std::string altered_commit;
  std::string snapshot_from;
  std::string snapshot_to;
  std::string category;
  std::string sub_category;
  std::string recorded_at;
  std::vector<StoredFileModification> files;
};

struct LoadError {
  std::size_t line = 0;
  std::string message;
};

struct LoadSummary {
  std::size_t inserted = 0;
  std::size_t skipped_duplicates = 0;
  std::size_t errors = 0;
  std::vector<LoadError> error_details;  // first few only
  std::string dataset_version;
};

/// Embedded alteration store. One writer at a time (loads take an exclusive
/// transaction); readers may run concurrently from other connections.
class Database {
 public:
  /// Opens or creates the database file and its schema. Throws
  /// Error(kStorageFailure).
  explicit Database(const std::filesystem::path& path);
  ~Database();
  Database(Database&& other) noexcept;
  Database& operator=(Database&& other) noexcept;
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;

  /// Parses lines on `workers` threads and inserts them in input order through
  /// one writer inside a single transaction. Malformed lines are counted and
  /// skipped. The dataset version moves forward exactly once when the
  /// transaction commits; a storage failure rolls everything back.
  LoadSummary load_records(std::istream& in, unsigned workers = 1);
  /// Throws Error(kIo) when the file cannot be opened.
  LoadSummary load_file(const std::filesystem::path& path, unsigned workers = 1);

  /// Sorted by (raw_branch, snapshot_to, altered_commit); files by path.
  [[nodiscard]] std::vector<StoredAlteration> query_by_origin(std::string_view origin,
                                                              BranchFilter filter) const;

  /// Empty until the first load.
  [[nodiscard]] std::string dataset_version() const;
  [[nodiscard]] std::size_t alteration_count() const;
  [[nodiscard]] std::size_t file_modification_count() const;
  /// SHA-1 over every stored row except surrogate ids and recorded_at, in key
  /// order. Equal digests mean equal logical content.
  [[nodiscard]] std::string state_digest() const;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  void exec(const char* sql) const;

  std::filesystem::path path_;
  sqlite3* db_ = nullptr;
};

}  // namespace historian
