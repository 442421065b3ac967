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

#include "detect/detector.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace historian {

namespace {

bool is_pull_head(std::string_view name) {
  // "pull/<digits>/head"
  if (!name.starts_with("pull/") || !name.ends_with("/head")) return false;
  std::string_view number = name.substr(5, name.size() - 5 - 5);
  return !number.empty() && number.size() + 10 == name.size() &&
         std::all_of(number.begin(), number.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

std::string UnifiedBranch::label() const {
  switch (kind) {
    case BranchClass::kMain: return "main";
    case BranchClass::kDevelopment: return "development";
    case BranchClass::kPullRequest: return "pull_request";
    case BranchClass::kRenovate: return "renovate";
    case BranchClass::kOther: return name;
  }
  return name;
}

UnifiedBranch unify_branch_name(std::string_view ref_name) {
  UnifiedBranch branch;
  branch.raw_name = std::string(ref_name);
  std::string_view name = ref_name;
  if (name.starts_with("refs/heads/")) {
    name.remove_prefix(11);
  } else if (name.starts_with("refs/pull/")) {
    name.remove_prefix(5);
  }
  branch.name = std::string(name);
  if (name == "main" || name == "master") {
    branch.kind = BranchClass::kMain;
  } else if (name == "dev" || name == "devel" || name == "develop" || name == "development") {
    branch.kind = BranchClass::kDevelopment;
  } else if (is_pull_head(name)) {
    branch.kind = BranchClass::kPullRequest;
  } else if (name.starts_with("renovate/")) {
    branch.kind = BranchClass::kRenovate;
  }
  return branch;
}

bool is_branch_ref(std::string_view ref_name) {
  return ref_name.starts_with("refs/heads/") ||
         (ref_name.starts_with("refs/pull/") && is_pull_head(ref_name.substr(5)));
}

ObjectIdHashSet reachable_set(const RepositoryReader& reader, const ObjectIdSet& tips) {
  ObjectIdHashSet seen;
  std::vector<ObjectId> stack(tips.begin(), tips.end());
  while (!stack.empty()) {
    ObjectId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    for (const ObjectId& parent : reader.commit(id).parents) {
      if (!seen.contains(parent)) stack.push_back(parent);
    }
  }
  return seen;
}

ObjectIdSet find_root_causes(const ObjectIdSet& altered, const RepositoryReader& reader) {
  ObjectIdSet roots;
  for (const ObjectId& id : altered) {
    const auto parents = reader.commit(id).parents;
    if (std::none_of(parents.begin(), parents.end(),
                     [&](const ObjectId& p) { return altered.contains(p); })) {
      roots.insert(id);
    }
  }
  return roots;
}

std::vector<BranchAlteration> detect_branch_alterations(const Snapshot& from,
                                                        const Snapshot& to,
                                                        const RepositoryReader& reader) {
  std::vector<BranchAlteration> result;
  for (const auto& [ref, tip] : from.refs) {
    if (!is_branch_ref(ref)) continue;
    ObjectIdHashSet before = reachable_set(reader, {tip});
    ObjectIdHashSet surviving;
    if (auto it = to.refs.find(ref); it != to.refs.end()) {
      if (it->second == tip) continue;
      surviving = reachable_set(reader, {it->second});
    } else {
      ObjectIdSet others;
      for (const auto& [other, other_tip] : from.refs) {
        if (other != ref && is_branch_ref(other)) others.insert(other_tip);
      }
      surviving = reachable_set(reader, others);
    }
    ObjectIdSet altered;
    for (const ObjectId& id : before) {
      if (!surviving.contains(id)) altered.insert(id);
    }
    if (altered.empty()) continue;
    BranchAlteration alteration;
    alteration.origin = from.origin;
    alteration.branch = unify_branch_name(ref);
    alteration.snapshot_from = from.snapshot_id;
    alteration.snapshot_to = to.snapshot_id;
    alteration.root_causes = find_root_causes(altered, reader);
    alteration.altered = std::move(altered);
    result.push_back(std::move(alteration));
  }
  return result;
}

}  // namespace historian
