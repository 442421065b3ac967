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

#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "core/repository_reader.hpp"

namespace historian {

enum class BranchClass { kMain, kDevelopment, kPullRequest, kRenovate, kOther };

/// A raw ref name together with its purpose class. Only used for reporting
/// and aggregation; detection always keys on the raw name.
struct UnifiedBranch {
  std::string raw_name;
  BranchClass kind = BranchClass::kOther;
  /// Ref name with "refs/heads/" stripped; meaningful for kOther.
  std::string name;

  /// "main", "development", "pull_request", "renovate", or `name`.
  [[nodiscard]] std::string label() const;

  friend bool operator==(const UnifiedBranch&, const UnifiedBranch&) = default;
};

[[nodiscard]] UnifiedBranch unify_branch_name(std::string_view ref_name);

/// Refs the detector diffs: refs/heads/* and refs/pull/<n>/head. Tags are not.
[[nodiscard]] bool is_branch_ref(std::string_view ref_name);

struct BranchAlteration {
  std::string origin;
  UnifiedBranch branch;
  std::string snapshot_from;
  std::string snapshot_to;
  ObjectIdSet altered;
  ObjectIdSet root_causes;
};

/// Transitive closure over parent edges, tips included.
[[nodiscard]] ObjectIdHashSet reachable_set(const RepositoryReader& reader,
                                            const ObjectIdSet& tips);

/// For each branch of `from`: commits reachable from it in `from` but not from
/// the same ref in `to`. When the ref no longer exists in `to`, the commits
/// that were exclusive to it in `from` (unreachable from every other branch
/// of `from`) are reported instead. Output sorted by branch name.
[[nodiscard]] std::vector<BranchAlteration> detect_branch_alterations(
    const Snapshot& from, const Snapshot& to, const RepositoryReader& reader);

/// Members of `altered` none of whose parents are in `altered`.
[[nodiscard]] ObjectIdSet find_root_causes(const ObjectIdSet& altered,
                                           const RepositoryReader& reader);

}  // namespace historian
