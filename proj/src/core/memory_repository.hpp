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

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

#include "core/repository_reader.hpp"

namespace historian {

/// Process-local object store. Ids are SHA-1 digests of a canonical
/// serialization, so equal content always yields equal ids (Merkle property),
/// but they are not git-compatible object names.
class MemoryRepository final : public RepositoryReader {
 public:
  ObjectId add_blob(std::string content);
  /// `files` maps repository paths to blob ids; directories are implied.
  ObjectId add_tree(const std::map<std::string, ObjectId>& files);
  /// Convenience: adds each content as a blob, then the tree.
  ObjectId add_tree_with_contents(const std::map<std::string, std::string>& files);
  /// Computes the id from the record's content; the incoming id is ignored.
  ObjectId add_commit(CommitRecord record);

  CommitRecord commit(const ObjectId& id) const override;
  std::vector<TreeEntry> tree_entries(const ObjectId& tree_id) const override;
  std::optional<std::string> blob(const ObjectId& id) const override;
  bool has_object(const ObjectId& id) const override;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<ObjectId, std::string> blobs_;
  std::unordered_map<ObjectId, std::vector<TreeEntry>> trees_;
  std::unordered_map<ObjectId, CommitRecord> commits_;
};

}  // namespace historian
