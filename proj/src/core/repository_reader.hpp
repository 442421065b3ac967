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

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace historian {

/// Read-only access to a commit/tree/blob store. Implementations must be
/// safe for concurrent use and deterministic: the same tree id always yields
/// the same entry list in the same order.
class RepositoryReader {
 public:
  virtual ~RepositoryReader() = default;

  /// Throws Error(kMissingObject) when `id` is absent or not a commit.
  [[nodiscard]] virtual CommitRecord commit(const ObjectId& id) const = 0;

  /// Recursively expanded listing of `tree_id`, directories included.
  /// Submodule (gitlink) entries are skipped.
  [[nodiscard]] virtual std::vector<TreeEntry> tree_entries(
      const ObjectId& tree_id) const = 0;

  [[nodiscard]] virtual std::optional<std::string> blob(
      const ObjectId& id) const = 0;

  [[nodiscard]] virtual bool has_object(const ObjectId& id) const = 0;

  /// Number of submodule entries skipped while listing trees so far.
  [[nodiscard]] virtual std::size_t skipped_entries() const { return 0; }
};

/// Path-sorted file and symlink entries reachable from the commit's root tree.
[[nodiscard]] std::vector<TreeEntry> full_tree_manifest(
    const RepositoryReader& reader, const ObjectId& commit_id);

/// Differences between the commit and its first parent (everything is
/// `added` for a root commit), sorted by path.
[[nodiscard]] std::vector<PathChange> changed_paths(
    const RepositoryReader& reader, const ObjectId& commit_id);

/// Diff of two manifests; both must be path-sorted.
[[nodiscard]] std::vector<PathChange> diff_manifests(
    const std::vector<TreeEntry>& before, const std::vector<TreeEntry>& after);

}  // namespace historian
