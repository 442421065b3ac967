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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "db/dataset.hpp"

namespace historian {

enum class GroupBy { kBranch, kCategory, kLicenseChange };

[[nodiscard]] std::optional<GroupBy> group_by_from_string(std::string_view name);

/// (group, count), count descending then name ascending. Branch groups use
/// the unified branch; license groups count license findings, not records.
[[nodiscard]] std::vector<std::pair<std::string, std::size_t>> group_counts(
    const std::vector<DatasetRecord>& records, GroupBy group_by);

/// Percentage table, or "no records" when nothing falls in any group.
[[nodiscard]] std::string render_report(const std::vector<DatasetRecord>& records, GroupBy group_by);

}  // namespace historian
