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

#include "categorize/categorizer.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "detect/detector.hpp"

namespace historian {

const char* to_string(MetadataField field) noexcept {
  switch (field) {
    case MetadataField::kAuthor: return "Author";
    case MetadataField::kMessage: return "Message";
    case MetadataField::kDate: return "Date";
    case MetadataField::kCommitter: return "Committer";
    case MetadataField::kCommitterDate: return "CommitterDate";
    case MetadataField::kOther: return "Other";
  }
  return "Other";
}

std::optional<MetadataField> metadata_field_from_string(std::string_view name) {
  for (auto f : {MetadataField::kAuthor, MetadataField::kMessage, MetadataField::kDate,
                 MetadataField::kCommitter, MetadataField::kCommitterDate, MetadataField::kOther}) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

const char* to_string(FileOutcome outcome) noexcept {
  switch (outcome) {
    case FileOutcome::kFoundIdentical: return "Found";
    case FileOutcome::kModified: return "Modified";
    case FileOutcome::kRemoved: return "Removed";
    case FileOutcome::kSplit: return "Split";
  }
  return "Removed";
}

std::string category_tag(const Category& category) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DifferentBranchName>) return "DifferentBranchName";
        if constexpr (std::is_same_v<T, MetaChange>) return "Meta";
        return "Dir";
      },
      category);
}

std::string sub_category_tag(const Category& category) {
  if (const auto* meta = std::get_if<MetaChange>(&category)) {
    std::string tag;
    for (MetadataField f : meta->fields) {
      if (!tag.empty()) tag += ",";
      tag += to_string(f);
    }
    return tag;
  }
  if (const auto* dir = std::get_if<DirChange>(&category)) {
    if (dir->content_split) return "ContentSplit";
    std::string tag;
    if (dir->file_modified) tag = "FileModified";
    if (dir->file_removed) tag += tag.empty() ? "FileRemoved" : ",FileRemoved";
    return tag;
  }
  return "DifferentBranchName";
}

SnapshotPairContext::SnapshotPairContext(const RepositoryReader& reader, const Snapshot& from,
                                         const Snapshot& to)
    : reader_(reader) {
  auto branch_tips = [](const Snapshot& s) {
    ObjectIdSet tips;
    for (const auto& [ref, tip] : s.refs) {
      if (is_branch_ref(ref)) tips.insert(tip);
    }
    return tips;
  };
  source_ = reachable_set(reader, branch_tips(from));
  target_ = reachable_set(reader, branch_tips(to));
  for (const ObjectId& id : target_) {
    if (source_.contains(id)) continue;
    const CommitRecord record = reader.commit(id);
    if (record.parents.empty()) new_roots_.push_back(id);
    for (const ObjectId& parent : record.parents) children_[parent].push_back(id);
  }
  std::sort(new_roots_.begin(), new_roots_.end());
  for (auto& [parent, children] : children_) {
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
  }
}

const std::vector<ObjectId>& SnapshotPairContext::new_children(const ObjectId& parent) const {
  static const std::vector<ObjectId> kNone;
  auto it = children_.find(parent);
  return it == children_.end() ? kNone : it->second;
}

std::vector<ObjectId> SnapshotPairContext::replacement_frontier(const CommitRecord& root) const {
  if (root.parents.empty()) return new_roots_;
  std::vector<ObjectId> frontier;
  for (const ObjectId& parent : root.parents) {
    const auto& children = new_children(parent);
    frontier.insert(frontier.end(), children.begin(), children.end());
  }
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  std::erase(frontier, root.id);
  return frontier;
}

std::shared_ptr<const SnapshotPairContext::Manifest> SnapshotPairContext::manifest(
    const ObjectId& commit) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = manifests_.find(commit); it != manifests_.end()) return it->second;
  }
  auto built = std::make_shared<Manifest>();
  for (const TreeEntry& e : full_tree_manifest(reader_, commit)) {
    built->emplace(e.path, e.content_id);
  }
  std::lock_guard lock(mutex_);
  return manifests_.emplace(commit, std::move(built)).first->second;
}

MetadataFields diff_metadata(const CommitRecord& before, const CommitRecord& after) {
  if (before.id == after.id) {
    throw Error(ErrorCode::kIdenticalCommits,
                "diff_metadata called on the same commit " + before.id.str());
  }
  MetadataFields fields;
  if (before.author.name != after.author.name || before.author.email != after.author.email) {
    fields.insert(MetadataField::kAuthor);
  }
  if (before.author.seconds != after.author.seconds ||
      before.author.tz_minutes != after.author.tz_minutes) {
    fields.insert(MetadataField::kDate);
  }
  if (before.committer.name != after.committer.name ||
      before.committer.email != after.committer.email) {
    fields.insert(MetadataField::kCommitter);
  }
  if (before.committer.seconds != after.committer.seconds ||
      before.committer.tz_minutes != after.committer.tz_minutes) {
    fields.insert(MetadataField::kCommitterDate);
  }
  if (before.message != after.message) fields.insert(MetadataField::kMessage);
  if (before.extra_headers != after.extra_headers || before.parents != after.parents ||
      fields.empty()) {
    // Distinct ids with every parsed field equal can only come from bytes we
    // do not model; they are reported as Other as well.
    fields.insert(MetadataField::kOther);
  }
  return fields;
}

std::optional<ObjectId> find_replacement_candidate(const ObjectId& root,
                                                   const SnapshotPairContext& context) {
  const CommitRecord original = context.reader().commit(root);
  std::optional<ObjectId> best;
  std::size_t best_distance = 0;
  for (const ObjectId& candidate : context.replacement_frontier(original)) {
    const CommitRecord record = context.reader().commit(candidate);
    if (record.tree != original.tree) continue;
    const std::size_t distance = diff_metadata(original, record).size();
    // The frontier is sorted, so the first minimum is also the smallest id.
    if (!best || distance < best_distance) {
      best = candidate;
      best_distance = distance;
    }
  }
  return best;
}

DirChange track_files(const ObjectId& root, const SnapshotPairContext& context,
                      const TrackOptions& options) {
  struct Tracked {
    std::string path;
    ObjectId content;
    std::optional<std::pair<int, ObjectId>> found;
    std::optional<std::pair<int, ObjectId>> modified;
    std::optional<ObjectId> modified_content;
  };
  std::vector<Tracked> tracked;
  for (const PathChange& change : changed_paths(context.reader(), root)) {
    if (change.kind == ChangeKind::kRemoved) continue;
    tracked.push_back({change.path, *change.new_content, {}, {}, {}});
  }

  DirChange result;
  if (tracked.empty()) {
    // Nothing the root introduced can be followed: the commit itself was dropped.
    result.file_removed = true;
    return result;
  }

  const CommitRecord record = context.reader().commit(root);
  std::vector<ObjectId> generation = context.replacement_frontier(record);
  ObjectIdHashSet visited(generation.begin(), generation.end());
  int depth = 0;
  std::size_t unresolved = tracked.size();
  for (int gen = 1; gen <= options.max_depth && !generation.empty() && unresolved > 0; ++gen) {
    depth = gen;
    for (const ObjectId& commit : generation) {
      if (options.on_visit) options.on_visit(commit, gen);
      const auto manifest = context.manifest(commit);
      for (Tracked& file : tracked) {
        if (file.found) continue;
        auto it = manifest->find(file.path);
        if (it == manifest->end()) continue;
        if (it->second == file.content) {
          file.found = {gen, commit};
          --unresolved;
        } else if (!file.modified) {
          file.modified = {gen, commit};
          file.modified_content = it->second;
        }
      }
    }
    std::vector<ObjectId> next;
    for (const ObjectId& commit : generation) {
      for (const ObjectId& child : context.new_children(commit)) {
        if (visited.insert(child).second) next.push_back(child);
      }
    }
    std::sort(next.begin(), next.end());
    generation = std::move(next);
  }

  ObjectIdSet found_in;
  bool all_found = true;
  for (const Tracked& file : tracked) {
    FileFate fate;
    fate.path = file.path;
    fate.content_id = file.content;
    if (file.found) {
      fate.outcome = FileOutcome::kFoundIdentical;
      fate.depth = file.found->first;
      fate.found_in = file.found->second;
      found_in.insert(file.found->second);
    } else if (file.modified) {
      fate.outcome = FileOutcome::kModified;
      fate.depth = file.modified->first;
      fate.found_in = file.modified->second;
      fate.replacement_content = file.modified_content;
      result.file_modified = true;
      all_found = false;
    } else {
      fate.outcome = FileOutcome::kRemoved;
      fate.depth = depth;
      result.file_removed = true;
      all_found = false;
    }
    result.fates.push_back(std::move(fate));
  }

  if (all_found) {
    if (found_in.size() > 1) {
      result.content_split = true;
      for (FileFate& fate : result.fates) fate.outcome = FileOutcome::kSplit;
    } else {
      // Every introduced file survived in one commit whose tree still differs
      // from the root's: some other path of that tree was changed.
      result.file_modified = true;
    }
  }
  return result;
}

Category categorize(const ObjectId& root, const SnapshotPairContext& context,
                    const TrackOptions& options) {
  if (context.in_target(root)) return DifferentBranchName{};
  if (auto replacement = find_replacement_candidate(root, context)) {
    return MetaChange{diff_metadata(context.reader().commit(root),
                                    context.reader().commit(*replacement)),
                      *replacement};
  }
  return track_files(root, context, options);
}

}  // namespace historian
