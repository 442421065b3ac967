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

#include "audit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

#include "analyze/licenses.hpp"
#include "analyze/secrets.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/git_object_store.hpp"
#include "core/hash.hpp"

namespace historian {

std::string alteration_id(const std::string& origin, const std::string& branch,
                          const std::string& snapshot_from, const std::string& snapshot_to) {
  std::string key = origin;
  for (const std::string* part : {&branch, &snapshot_from, &snapshot_to}) {
    key += '\0';
    key += *part;
  }
  return sha1_hex(key);
}

std::vector<AlterationRecord> categorize_pair(const Snapshot& from, const Snapshot& to,
                                              const RepositoryReader& reader,
                                              const TrackOptions& track) {
  std::vector<AlterationRecord> records;
  const auto alterations = detect_branch_alterations(from, to, reader);
  if (alterations.empty()) return records;
  const SnapshotPairContext context(reader, from, to);
  for (const auto& alteration : alterations) {
    const std::string id = alteration_id(alteration.origin, alteration.branch.raw_name,
                                         alteration.snapshot_from, alteration.snapshot_to);
    for (const ObjectId& root : alteration.root_causes) {
      AlterationRecord record;
      record.alteration_id = id;
      record.origin = alteration.origin;
      record.branch = alteration.branch;
      record.snapshot_from = alteration.snapshot_from;
      record.snapshot_to = alteration.snapshot_to;
      record.altered = alteration.altered;
      record.root_cause = root;
      record.category = categorize(root, context, track);
      records.push_back(std::move(record));
    }
  }
  return records;
}

DetectResult detect_archive(const OriginArchive& archive, const DetectOptions& options) {
  DetectResult result;
  result.summary.origins = 1;
  std::vector<std::pair<Snapshot, Snapshot>> pairs;
  try {
    pairs = list_snapshot_pairs(archive);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientSnapshots) throw;
    result.summary.warnings.push_back(archive.origin + ": " + e.what());
    return result;
  }
  GitObjectStore reader(archive.objects_dir());
  auto& s = result.summary;
  for (const auto& [from, to] : pairs) {
    ++s.snapshot_pairs;
    const auto records = categorize_pair(from, to, reader, options.track);
    std::string last_alteration;
    for (const auto& record : records) {
      if (record.alteration_id != last_alteration) {
        ++s.altered_branches;
        s.altered_commits += record.altered.size();
        last_alteration = record.alteration_id;
      }
      const std::vector<AlterationRecord> one{record};
      const auto secrets = scan_secret_removals(one, reader);
      const auto licenses = scan_license_changes(one, reader, !options.licenses_all_branches);
      ++s.root_causes;
      ++s.by_category[category_tag(record.category)];
      ++s.by_sub_category[category_tag(record.category) + "/" + sub_category_tag(record.category)];
      s.secret_findings += secrets.size();
      for (const auto& l : licenses) ++s.license_changes[to_string(l.change_class)];
      result.records.push_back(dataset_record_from(record, secrets, licenses));
    }
  }
  return result;
}

DetectResult run_detect(const DetectOptions& options) {
  const auto archives = list_archives(options.archive_root);
  std::vector<DetectResult> partial(archives.size());
  std::vector<std::exception_ptr> failures(archives.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < archives.size(); i = next++) {
      try {
        partial[i] = detect_archive(archives[i], options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned n = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(archives.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  DetectResult total;
  auto& s = total.summary;
  for (auto& p : partial) {
    const auto& ps = p.summary;
    s.origins += ps.origins;
    s.snapshot_pairs += ps.snapshot_pairs;
    s.altered_branches += ps.altered_branches;
    s.altered_commits += ps.altered_commits;
    s.root_causes += ps.root_causes;
    for (const auto& [k, v] : ps.by_category) s.by_category[k] += v;
    for (const auto& [k, v] : ps.by_sub_category) s.by_sub_category[k] += v;
    s.secret_findings += ps.secret_findings;
    for (const auto& [k, v] : ps.license_changes) s.license_changes[k] += v;
    s.warnings.insert(s.warnings.end(), ps.warnings.begin(), ps.warnings.end());
    std::move(p.records.begin(), p.records.end(), std::back_inserter(total.records));
  }
  return total;
}

void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& out) {
  std::string text;
  for (const auto& r : records) text += to_dataset_line(r) + "\n";
  if (out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
  }
  write_file_atomic(out, text);
}

std::string render_detect_summary(const DetectSummary& s) {
  std::string out;
  char line[160];
  auto add = [&](const char* label, std::size_t value) {
    std::snprintf(line, sizeof line, "%-28s %10zu\n", label, value);
    out += line;
  };
  add("Origins scanned", s.origins);
  add("Snapshot pairs", s.snapshot_pairs);
  add("Altered branches", s.altered_branches);
  add("Altered commits", s.altered_commits);
  add("Root cause commits", s.root_causes);
  out += "\nRoot cause commits by category:\n";
  for (const char* category : {"Meta", "Dir", "DifferentBranchName"}) {
    const auto it = s.by_category.find(category);
    const std::size_t n = it == s.by_category.end() ? 0 : it->second;
    const double pct = s.root_causes == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(s.root_causes);
    std::snprintf(line, sizeof line, "  %-26s %10zu %7.2f%%\n", category, n, pct);
    out += line;
    const std::string prefix = std::string(category) + "/";
    for (const auto& [key, count] : s.by_sub_category) {
      if (!key.starts_with(prefix) || category == std::string("DifferentBranchName")) continue;
      std::snprintf(line, sizeof line, "    %-24s %10zu\n", key.substr(prefix.size()).c_str(), count);
      out += line;
    }
  }
  out += "\n";
  add("Secret findings", s.secret_findings);
  if (!s.license_changes.empty()) {
    out += "License changes:\n";
    for (const auto& [cls, count] : s.license_changes) {
      std::snprintf(line, sizeof line, "  %-26s %10zu\n", cls.c_str(), count);
      out += line;
    }
  }
  return out;
}

}  // namespace historian
