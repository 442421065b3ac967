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

#include <algorithm>

#include "core/repository_reader.hpp"

namespace historian {

const char* to_string(ChangeKind kind) noexcept {
  switch (kind) {
    case ChangeKind::kAdded: return "added";
    case ChangeKind::kModified: return "modified";
    case ChangeKind::kRemoved: return "removed";
  }
  return "unknown";
}

std::vector<TreeEntry> full_tree_manifest(const RepositoryReader& reader,
                                          const ObjectId& commit_id) {
  const CommitRecord commit = reader.commit(commit_id);
  std::vector<TreeEntry> entries = reader.tree_entries(commit.tree);
  std::erase_if(entries, [](const TreeEntry& e) {
    return e.kind == EntryKind::kDirectory;
  });
  std::sort(entries.begin(), entries.end(),
            [](const TreeEntry& a, const TreeEntry& b) { return a.path < b.path; });
  return entries;
}

std::vector<PathChange> diff_manifests(const std::vector<TreeEntry>& before,
                                       const std::vector<TreeEntry>& after) {
  std::vector<PathChange> changes;
  auto b = before.begin();
  auto a = after.begin();
  while (b != before.end() || a != after.end()) {
    if (a == after.end() || (b != before.end() && b->path < a->path)) {
      changes.push_back({b->path, ChangeKind::kRemoved, b->content_id, std::nullopt});
      ++b;
    } else if (b == before.end() || a->path < b->path) {
      changes.push_back({a->path, ChangeKind::kAdded, std::nullopt, a->content_id});
      ++a;
    } else {
      if (a->content_id != b->content_id || a->mode != b->mode) {
        changes.push_back({a->path, ChangeKind::kModified, b->content_id, a->content_id});
      }
      ++a;
      ++b;
    }
  }
  return changes;
}

std::vector<PathChange> changed_paths(const RepositoryReader& reader,
                                      const ObjectId& commit_id) {
  const CommitRecord commit = reader.commit(commit_id);
  std::vector<TreeEntry> parent_manifest;
  if (!commit.parents.empty()) {
    parent_manifest = full_tree_manifest(reader, commit.parents.front());
  }
  return diff_manifests(parent_manifest, full_tree_manifest(reader, commit_id));
}

}  // namespace historian
