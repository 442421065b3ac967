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

#include <filesystem>
#include <optional>
#include <string>

namespace historian {

/// What a cached check depends on besides the dataset version.
struct CacheKey {
  std::string origin;
  std::string branch_filter;
  std::string format;
  bool verbose = false;

  /// File name stem: SHA-1 over the fields.
  [[nodiscard]] std::string hash() const;
};

struct CacheEntry {
  CacheKey key;
  std::string dataset_version;
  std::string stored_at;
  std::string payload;
  int exit_code = 0;
};

/// One JSON file per key below `dir`. An entry only counts when it was stored
/// under the current dataset version; stale entries are overwritten by the
/// next store. Writes are atomic renames, so concurrent writers of one key
/// resolve to the last one.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  [[nodiscard]] std::optional<CacheEntry> lookup(const CacheKey& key,
                                                 const std::string& dataset_version) const;
  void store(const CacheKey& key, const std::string& dataset_version, const std::string& payload,
             int exit_code);

  [[nodiscard]] std::filesystem::path entry_path(const CacheKey& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace historian
