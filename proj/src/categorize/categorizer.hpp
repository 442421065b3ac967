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

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "core/model.hpp"
#include "core/repository_reader.hpp"

namespace historian {

enum class MetadataField { kAuthor, kMessage, kDate, kCommitter, kCommitterDate, kOther };
using MetadataFields = std::set<MetadataField>;

[[nodiscard]] const char* to_string(MetadataField field) noexcept;
[[nodiscard]] std::optional<MetadataField> metadata_field_from_string(std::string_view name);

enum class FileOutcome { kFoundIdentical, kModified, kRemoved, kSplit };

[[nodiscard]] const char* to_string(FileOutcome outcome) noexcept;

struct FileFate {
  std::string path;
  FileOutcome outcome = FileOutcome::kRemoved;
  std::optional<ObjectId> found_in;
  int depth = 0;  // generation where the path was resolved, or searched to
  ObjectId content_id;                      // content in the root cause commit
  std::optional<ObjectId> replacement_content;  // set for kModified

  friend bool operator==(const FileFate&, const FileFate&) = default;
};

struct DifferentBranchName {
  friend bool operator==(const DifferentBranchName&, const DifferentBranchName&) = default;
};

struct MetaChange {
  MetadataFields fields;  // never empty
  ObjectId replacement;
  friend bool operator==(const MetaChange&, const MetaChange&) = default;
};

struct DirChange {
  bool content_split = false;  // excludes the other two flags
  bool file_modified = false;
  bool file_removed = false;
  std::vector<FileFate> fates;  // path-sorted
  friend bool operator==(const DirChange&, const DirChange&) = default;
};

using Category = std::variant<DifferentBranchName, MetaChange, DirChange>;

/// "DifferentBranchName", "Meta" or "Dir".
[[nodiscard]] std::string category_tag(const Category& category);
/// Comma-joined subcategory tags: "Message,Date", "FileModified,FileRemoved",
/// "ContentSplit", or "DifferentBranchName".
[[nodiscard]] std::string sub_category_tag(const Category& category);

/// Reachability facts about one snapshot pair, shared by every root cause
/// categorized against it. Only branch refs (heads and pull heads) count.
class SnapshotPairContext {
 public:
  using Manifest = std::unordered_map<std::string, ObjectId>;

  SnapshotPairContext(const RepositoryReader& reader, const Snapshot& from, const Snapshot& to);

  [[nodiscard]] const RepositoryReader& reader() const noexcept { return reader_; }
  [[nodiscard]] bool in_source(const ObjectId& id) const { return source_.contains(id); }
  [[nodiscard]] bool in_target(const ObjectId& id) const { return target_.contains(id); }
  /// Reachable in the later snapshot but not in the earlier one.
  [[nodiscard]] bool is_new(const ObjectId& id) const {
    return target_.contains(id) && !source_.contains(id);
  }
  /// New commits having `parent` as one of their parents, sorted.
  [[nodiscard]] const std::vector<ObjectId>& new_children(const ObjectId& parent) const;
  /// New parentless commits, sorted.
  [[nodiscard]] const std::vector<ObjectId>& new_roots() const noexcept { return new_roots_; }
  /// Start of the replacement search for `root`: new children of its parents,
  /// or the new root commits when `root` has no parent.
  [[nodiscard]] std::vector<ObjectId> replacement_frontier(const CommitRecord& root) const;
  /// Path -> content map of a commit, memoized.
  [[nodiscard]] std::shared_ptr<const Manifest> manifest(const ObjectId& commit) const;

 private:
  const RepositoryReader& reader_;
  ObjectIdHashSet source_;
  ObjectIdHashSet target_;
  std::unordered_map<ObjectId, std::vector<ObjectId>> children_;
  std::vector<ObjectId> new_roots_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<ObjectId, std::shared_ptr<const Manifest>> manifests_;
};

struct TrackOptions {
  int max_depth = 10;
  /// Called once per visited commit with its generation (frontier = 1).
  std::function<void(const ObjectId&, int)> on_visit;
};

/// Decision cascade: still reachable in the later snapshot -> different
/// branch name; identical-tree replacement -> META; otherwise DIR.
[[nodiscard]] Category categorize(const ObjectId& root, const SnapshotPairContext& context,
                                  const TrackOptions& options = {});

/// Among new children of the root's parents, the commit with the root's
/// tree; ties go to fewest differing metadata fields, then the smaller id.
[[nodiscard]] std::optional<ObjectId> find_replacement_candidate(
    const ObjectId& root, const SnapshotPairContext& context);

/// Throws Error(kIdenticalCommits) when both records share an id.
[[nodiscard]] MetadataFields diff_metadata(const CommitRecord& before, const CommitRecord& after);

/// Follows every file the root added or modified (relative to its first
/// parent) through up to `max_depth` generations of new commits.
[[nodiscard]] DirChange track_files(const ObjectId& root, const SnapshotPairContext& context,
                                    const TrackOptions& options = {});

}  // namespace historian
