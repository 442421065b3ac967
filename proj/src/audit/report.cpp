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

#include "audit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace historian {

std::optional<GroupBy> group_by_from_string(std::string_view name) {
  if (name == "branch") return GroupBy::kBranch;
  if (name == "category") return GroupBy::kCategory;
  if (name == "license-change") return GroupBy::kLicenseChange;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::size_t>> group_counts(const std::vector<DatasetRecord>& records,
                                                              GroupBy group_by) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    switch (group_by) {
      case GroupBy::kBranch: ++counts[r.unified_branch]; break;
      case GroupBy::kCategory: ++counts[r.category]; break;
      case GroupBy::kLicenseChange:
        for (const auto& l : r.licenses) ++counts[l.change];
        break;
    }
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string render_report(const std::vector<DatasetRecord>& records, GroupBy group_by) {
  const auto groups = group_counts(records, group_by);
  std::size_t total = 0;
  for (const auto& [name, n] : groups) total += n;
  if (total == 0) return "no records\n";
  const char* header = group_by == GroupBy::kBranch     ? "branch"
                       : group_by == GroupBy::kCategory ? "category"
                                                        : "license_change";
  std::size_t width = std::string_view(header).size();
  for (const auto& [name, n] : groups) width = std::max(width, name.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s %10s %8s\n", static_cast<int>(width), header, "count", "percent");
  out += line;
  for (const auto& [name, n] : groups) {
    std::snprintf(line, sizeof line, "%-*s %10zu %7.2f%%\n", static_cast<int>(width), name.c_str(), n,
                  100.0 * static_cast<double>(n) / static_cast<double>(total));
    out += line;
  }
  std::snprintf(line, sizeof line, "%-*s %10zu\n", static_cast<int>(width), "total", total);
  out += line;
  return out;
}

}  // namespace historian
