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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "analyze/licenses.hpp"
#include "analyze/secrets.hpp"
#include "categorize/alteration_record.hpp"

namespace historian {

struct DatasetFile {
  std::string path;
  std::string status;  // Found, Modified, Removed, Split

  friend bool operator==(const DatasetFile&, const DatasetFile&) = default;
};

struct DatasetSecret {
  std::string path;
  std::string pattern;
  std::string label;
  std::string via;  // filename, content

  friend bool operator==(const DatasetSecret&, const DatasetSecret&) = default;
};

struct DatasetLicense {
  std::string path;
  std::vector<std::string> before;
  std::vector<std::string> after;
  std::string change;

  friend bool operator==(const DatasetLicense&, const DatasetLicense&) = default;
};

/// One line of the alteration dataset. The first nine fields are the load
/// contract; the rest are written by the detection pipeline and ignored by
/// the database.
struct DatasetRecord {
  std::string origin;
  std::string raw_branch;
  std::string unified_branch;
  std::string altered_commit;
  std::string snapshot_from;
  std::string snapshot_to;
  std::string category;
  std::string sub_category;
  std::vector<DatasetFile> files;

  std::string alteration_id;
  std::vector<std::string> altered;
  std::vector<DatasetSecret> secrets;
  std::vector<DatasetLicense> licenses;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

/// Category/sub-category pairs the taxonomy allows.
[[nodiscard]] bool is_valid_category_pair(std::string_view category, std::string_view sub_category);
[[nodiscard]] bool is_valid_file_status(std::string_view status);

/// Throws Error(kMalformedRecord, line) on invalid JSON or schema violations.
/// A missing unified_branch is derived from raw_branch.
[[nodiscard]] DatasetRecord parse_dataset_line(std::string_view line, std::size_t line_no);
[[nodiscard]] DatasetRecord dataset_record_from_json(const nlohmann::json& json, std::size_t line_no);
[[nodiscard]] nlohmann::ordered_json to_json(const DatasetRecord& record);
/// Compact JSON, no trailing newline.
[[nodiscard]] std::string to_dataset_line(const DatasetRecord& record);

/// Reads a whole dataset file; blank lines are skipped. Stops at the first
/// malformed line.
[[nodiscard]] std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);

[[nodiscard]] DatasetRecord dataset_record_from(const AlterationRecord& record,
                                                const std::vector<SecretFinding>& secrets = {},
                                                const std::vector<LicenseFinding>& licenses = {});

}  // namespace historian
