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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "db/database.hpp"

namespace historian {

enum class OutputFormat { kText, kJson };

struct CheckOptions {
  std::string origin;
  BranchFilter filter = BranchFilter::kAll;
  bool verbose = false;
  OutputFormat format = OutputFormat::kText;
  /// Directory receiving the report file.
  std::filesystem::path state_dir;
  /// Report timestamp; defaults to SOURCE_DATE_EPOCH or the wall clock.
  std::optional<std::int64_t> now_seconds;
  /// Triggering event name passed by hooks ("pull", "merge", "checkout").
  std::string event;
};

struct CheckOutput {
  std::string out;
  std::string err;
  std::filesystem::path report_path;
  std::size_t record_count = 0;
  int exit_code = 0;  // 0 nothing found, 1 alterations found
  bool cached = false;
};

/// "altered_history_<sanitized origin>_<YYYYMMDD_HHMMSS>.txt"
[[nodiscard]] std::string report_file_name(const std::string& origin, std::int64_t seconds);

/// The human-readable listing. Record and file blocks appear only when
/// `verbose`; "File Modifications:" only when some record has files.
[[nodiscard]] std::string render_check_text(const std::string& origin,
                                            const std::vector<StoredAlteration>& records,
                                            bool verbose);
[[nodiscard]] std::string render_saved_to(const std::filesystem::path& report_path);
/// Array of records with full ids; pretty printed, newline terminated.
[[nodiscard]] std::string render_check_json(const std::vector<StoredAlteration>& records);

/// Queries, writes the verbose text report under the state directory and
/// renders stdout in the requested format.
CheckOutput run_check(const Database& db, const CheckOptions& options);

/// run_check behind the result cache in `<state dir>/cache`. A hit replays
/// the stored stdout byte for byte and notes "(cached)" on stderr.
CheckOutput run_check_cached(const Database& db, const CheckOptions& options);

}  // namespace historian
