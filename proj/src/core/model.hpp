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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/object_id.hpp"

namespace historian {

struct Signature {
  std::string name;
  std::string email;
  std::int64_t seconds = 0;      // since epoch
  std::int32_t tz_minutes = 0;   // offset east of UTC

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct CommitRecord {
  ObjectId id;
  std::vector<ObjectId> parents;
  ObjectId tree;
  Signature author;
  Signature committer;
  std::string message;
  /// Headers other than tree/parent/author/committer, in object order
  /// (encoding, gpgsig, mergetag, ...). Continuation lines are unfolded.
  std::vector<std::pair<std::string, std::string>> extra_headers;
};

enum class EntryKind { kFile, kDirectory, kSymlink };

struct TreeEntry {
  std::string path;  // slash separated, no leading slash
  EntryKind kind = EntryKind::kFile;
  ObjectId content_id;
  std::uint32_t mode = 0100644;

  friend bool operator==(const TreeEntry&, const TreeEntry&) = default;
};

/// Full ref name ("refs/heads/main") to commit.
using RefMap = std::map<std::string, ObjectId>;

struct Snapshot {
  std::string origin;
  std::int64_t captured_at = 0;
  RefMap refs;
  std::string snapshot_id;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

enum class ChangeKind { kAdded, kModified, kRemoved };

struct PathChange {
  std::string path;
  ChangeKind kind = ChangeKind::kAdded;
  std::optional<ObjectId> old_content;
  std::optional<ObjectId> new_content;

  friend bool operator==(const PathChange&, const PathChange&) = default;
};

[[nodiscard]] const char* to_string(ChangeKind kind) noexcept;

}  // namespace historian
