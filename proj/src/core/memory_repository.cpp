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

#include "core/memory_repository.hpp"

#include <set>

#include "core/errors.hpp"
#include "core/hash.hpp"

namespace historian {

ObjectId MemoryRepository::add_blob(std::string content) {
  ObjectId id = ObjectId::parse(sha1_hex(std::string("blob") + '\0' + content));
  std::lock_guard lock(mutex_);
  blobs_.emplace(id, std::move(content));
  return id;
}

ObjectId MemoryRepository::add_tree(const std::map<std::string, ObjectId>& files) {
  std::string canonical = "tree";
  std::vector<TreeEntry> entries;
  std::set<std::string> directories;
  for (const auto& [path, blob] : files) {
    canonical += '\0' + path + ' ' + blob.str();
    for (auto slash = path.find('/'); slash != std::string::npos;
         slash = path.find('/', slash + 1)) {
      directories.insert(path.substr(0, slash));
    }
    entries.push_back({path, EntryKind::kFile, blob, 0100644});
  }
  ObjectId id = ObjectId::parse(sha1_hex(canonical));
  for (const auto& dir : directories) {
    // Directory ids only need to be stable, not meaningful.
    entries.push_back({dir, EntryKind::kDirectory,
                       ObjectId::parse(sha1_hex(std::string("dir") + '\0' + id.str() + dir)), 040000});
  }
  std::lock_guard lock(mutex_);
  trees_.emplace(id, std::move(entries));
  return id;
}

ObjectId MemoryRepository::add_tree_with_contents(
    const std::map<std::string, std::string>& files) {
  std::map<std::string, ObjectId> blobs;
  for (const auto& [path, content] : files) blobs.emplace(path, add_blob(content));
  return add_tree(blobs);
}

ObjectId MemoryRepository::add_commit(CommitRecord record) {
  std::string canonical = std::string("commit") + '\0' + "tree " + record.tree.str();
  for (const auto& p : record.parents) canonical += "\nparent " + p.str();
  auto sig = [](const Signature& s) {
    return s.name + " <" + s.email + "> " + std::to_string(s.seconds) + " " +
           std::to_string(s.tz_minutes);
  };
  canonical += "\nauthor " + sig(record.author);
  canonical += "\ncommitter " + sig(record.committer);
  for (const auto& [k, v] : record.extra_headers) canonical += "\n" + k + " " + v;
  canonical += "\n\n" + record.message;
  record.id = ObjectId::parse(sha1_hex(canonical));
  ObjectId id = record.id;
  std::lock_guard lock(mutex_);
  commits_.emplace(id, std::move(record));
  return id;
}

CommitRecord MemoryRepository::commit(const ObjectId& id) const {
  std::lock_guard lock(mutex_);
  auto it = commits_.find(id);
  if (it == commits_.end()) {
    throw Error(ErrorCode::kMissingObject, "commit " + id.str() + " not found");
  }
  return it->second;
}

std::vector<TreeEntry> MemoryRepository::tree_entries(const ObjectId& tree_id) const {
  std::lock_guard lock(mutex_);
  auto it = trees_.find(tree_id);
  if (it == trees_.end()) {
    throw Error(ErrorCode::kMissingObject, "tree " + tree_id.str() + " not found");
  }
  return it->second;
}

std::optional<std::string> MemoryRepository::blob(const ObjectId& id) const {
  std::lock_guard lock(mutex_);
  auto it = blobs_.find(id);
  if (it == blobs_.end()) return std::nullopt;
  return it->second;
}

bool MemoryRepository::has_object(const ObjectId& id) const {
  std::lock_guard lock(mutex_);
  return blobs_.contains(id) || trees_.contains(id) || commits_.contains(id);
}

}  // namespace historian
