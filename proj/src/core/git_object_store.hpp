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

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "core/process.hpp"
#include "core/repository_reader.hpp"

namespace historian {

/// RepositoryReader over a local (bare or non-bare) git directory. Objects
/// are read through long-lived `git cat-file` processes; parsed commits and
/// flattened trees are memoized.
class GitObjectStore final : public RepositoryReader {
 public:
  explicit GitObjectStore(std::filesystem::path git_dir);
  ~GitObjectStore() override;

  CommitRecord commit(const ObjectId& id) const override;
  std::vector<TreeEntry> tree_entries(const ObjectId& tree_id) const override;
  std::optional<std::string> blob(const ObjectId& id) const override;
  bool has_object(const ObjectId& id) const override;
  std::size_t skipped_entries() const override { return skipped_.load(); }

  [[nodiscard]] const std::filesystem::path& git_dir() const noexcept { return git_dir_; }

 private:
  struct RawObject {
    std::string type;
    std::string data;
  };
  using Listing = std::shared_ptr<const std::vector<TreeEntry>>;

  std::optional<RawObject> read_raw(const ObjectId& id) const;
  Listing flatten(const ObjectId& tree_id) const;

  std::filesystem::path git_dir_;
  mutable std::mutex io_mutex_;
  mutable std::unique_ptr<PipeProcess> batch_;
  mutable std::unique_ptr<PipeProcess> batch_check_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<ObjectId, CommitRecord> commits_;
  mutable std::unordered_map<ObjectId, Listing> trees_;
  mutable std::atomic<std::size_t> skipped_{0};
};

/// Parses the body of a commit object. Exposed for tests.
CommitRecord parse_commit_object(const ObjectId& id, std::string_view data);

}  // namespace historian
