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

#include "db/cache.hpp"

#include "json.hpp"

#include "core/clock.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/hash.hpp"

namespace historian {

std::string CacheKey::hash() const {
  std::string canonical = origin;
  canonical += '\0';
  canonical += branch_filter;
  canonical += '\0';
  canonical += format;
  canonical += '\0';
  canonical += verbose ? "1" : "0";
  return sha1_hex(canonical);
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::entry_path(const CacheKey& key) const {
  return dir_ / (key.hash() + ".json");
}

std::optional<CacheEntry> ResultCache::lookup(const CacheKey& key,
                                              const std::string& dataset_version) const {
  if (dataset_version.empty()) return std::nullopt;
  std::string text;
  try {
    text = read_file(entry_path(key));
  } catch (const Error&) {
    return std::nullopt;
  }
  // A torn or foreign file is a miss, never an error.
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    CacheEntry e;
    e.key.origin = j.at("origin").get<std::string>();
    e.key.branch_filter = j.at("branch_filter").get<std::string>();
    e.key.format = j.at("format").get<std::string>();
    e.key.verbose = j.at("verbose").get<bool>();
    e.dataset_version = j.at("dataset_version").get<std::string>();
    e.stored_at = j.at("stored_at").get<std::string>();
    e.payload = j.at("payload").get<std::string>();
    e.exit_code = j.at("exit_code").get<int>();
    if (e.key.origin != key.origin || e.key.branch_filter != key.branch_filter ||
        e.key.format != key.format || e.key.verbose != key.verbose ||
        e.dataset_version != dataset_version) {
      return std::nullopt;
    }
    return e;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const CacheKey& key, const std::string& dataset_version,
                        const std::string& payload, int exit_code) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create cache directory " + dir_.string());
  nlohmann::ordered_json j;
  j["origin"] = key.origin;
  j["branch_filter"] = key.branch_filter;
  j["format"] = key.format;
  j["verbose"] = key.verbose;
  j["dataset_version"] = dataset_version;
  j["stored_at"] = format_rfc3339_micros(now_micros());
  j["exit_code"] = exit_code;
  j["payload"] = payload;
  write_file_atomic(entry_path(key), j.dump(2) + "\n");
}

}  // namespace historian
