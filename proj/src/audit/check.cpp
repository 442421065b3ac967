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

#include "audit/check.hpp"

#include "json.hpp"

#include "core/clock.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/object_id.hpp"
#include "db/cache.hpp"
#include "store/snapshot_store.hpp"

namespace historian {

namespace {

/// Commit and snapshot ids print as 15 characters and "..." in text output.
std::string shorten(const std::string& id) {
  if (id.size() <= 15) return id;
  return id.substr(0, 15) + "...";
}

const char* format_name(OutputFormat format) {
  return format == OutputFormat::kJson ? "json" : "text";
}

}  // namespace

std::string report_file_name(const std::string& origin, std::int64_t seconds) {
  return "altered_history_" + sanitize_origin(origin) + "_" + format_compact_utc(seconds) + ".txt";
}

std::string render_check_text(const std::string& origin,
                              const std::vector<StoredAlteration>& records, bool verbose) {
  std::string out = "Found " + std::to_string(records.size()) + " altered history records for '" +
                    origin + "'\n\n";
  if (!verbose || records.empty()) return out;
  out += "Altered History Records:\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out += "Record #" + std::to_string(i + 1) + ":\n";
    out += "  Branch Name: " + r.raw_branch + "\n";
    out += "  Altered Commit: " + shorten(r.altered_commit) + "\n";
    out += "  Snapshot Destination: " + shorten(r.snapshot_to) + "\n";
    out += "  Sub Category: " + r.sub_category + "\n\n";
  }
  bool any_files = false;
  for (const auto& r : records) any_files = any_files || !r.files.empty();
  if (!any_files) return out;
  out += "File Modifications:\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& f : records[i].files) {
      out += "Record #" + std::to_string(i + 1) + ":\n";
      out += "  Branch Name: " + records[i].raw_branch + "\n";
      out += "  Altered Commit: " + shorten(records[i].altered_commit) + "\n";
      out += "  File Path: " + f.file_path + "\n";
      out += "  Status: " + f.status + "\n\n";
    }
  }
  return out;
}

std::string render_saved_to(const std::filesystem::path& report_path) {
  return "Results saved to: " + report_path.parent_path().string() + "/\n  " +
         report_path.filename().string() + "\n";
}

std::string render_check_json(const std::vector<StoredAlteration>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["origin"] = r.origin;
    j["branch"] = r.raw_branch;
    j["unified_branch"] = r.unified_branch;
    j["altered_commit"] = r.altered_commit;
    j["snapshot_from"] = r.snapshot_from;
    j["snapshot_destination"] = r.snapshot_to;
    j["category"] = r.category;
    j["sub_category"] = r.sub_category;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : r.files) j["files"].push_back({{"path", f.file_path}, {"status", f.status}});
    arr.push_back(std::move(j));
  }
  return arr.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

CheckOutput run_check(const Database& db, const CheckOptions& options) {
  const auto records = db.query_by_origin(options.origin, options.filter);
  const std::int64_t now = options.now_seconds.value_or(report_epoch_seconds());

  CheckOutput result;
  result.record_count = records.size();
  result.exit_code = records.empty() ? 0 : 1;
  result.report_path = options.state_dir / report_file_name(options.origin, now);

  std::error_code ec;
  std::filesystem::create_directories(options.state_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create state directory " + options.state_dir.string());
  write_file_atomic(result.report_path, render_check_text(options.origin, records, true));

  if (options.format == OutputFormat::kJson) {
    result.out = render_check_json(records);
    result.err = render_saved_to(result.report_path);
  } else {
    result.out = render_check_text(options.origin, records, options.verbose) +
                 render_saved_to(result.report_path);
  }
  return result;
}

CheckOutput run_check_cached(const Database& db, const CheckOptions& options) {
  ResultCache cache(options.state_dir / "cache");
  const CacheKey key{options.origin, to_string(options.filter), format_name(options.format),
                     options.verbose};
  const std::string version = db.dataset_version();
  std::string preamble;
  if (!options.event.empty()) {
    preamble = "git-historian: checking '" + options.origin + "' after " + options.event + "\n";
  }
  if (auto entry = cache.lookup(key, version)) {
    CheckOutput hit;
    hit.out = entry->payload;
    hit.err = preamble + "(cached)\n";
    hit.exit_code = entry->exit_code;
    hit.cached = true;
    return hit;
  }
  CheckOutput fresh = run_check(db, options);
  if (!version.empty()) cache.store(key, version, fresh.out, fresh.exit_code);
  fresh.err = preamble + fresh.err;
  return fresh;
}

}  // namespace historian
