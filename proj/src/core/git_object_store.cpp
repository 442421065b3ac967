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

#include "core/git_object_store.hpp"

#include <charconv>

namespace historian {

namespace {

std::int32_t parse_tz(std::string_view tz) {
  if (tz.size() != 5 || (tz[0] != '+' && tz[0] != '-')) return 0;
  int hours = 0, minutes = 0;
  std::from_chars(tz.data() + 1, tz.data() + 3, hours);
  std::from_chars(tz.data() + 3, tz.data() + 5, minutes);
  std::int32_t offset = hours * 60 + minutes;
  return tz[0] == '-' ? -offset : offset;
}

// "Name <email> 1234567890 +0200"
Signature parse_signature(std::string_view value) {
  Signature sig;
  auto lt = value.rfind('<');
  auto gt = value.rfind('>');
  if (lt == std::string_view::npos || gt == std::string_view::npos || gt < lt) {
    sig.name = std::string(value);
    return sig;
  }
  std::string_view name = value.substr(0, lt);
  while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
  sig.name = std::string(name);
  sig.email = std::string(value.substr(lt + 1, gt - lt - 1));
  std::string_view rest = value.substr(gt + 1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  auto space = rest.find(' ');
  std::string_view ts = rest.substr(0, space);
  std::from_chars(ts.data(), ts.data() + ts.size(), sig.seconds);
  if (space != std::string_view::npos) sig.tz_minutes = parse_tz(rest.substr(space + 1));
  return sig;
}

}  // namespace

CommitRecord parse_commit_object(const ObjectId& id, std::string_view data) {
  CommitRecord record;
  record.id = id;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) {
      record.message = std::string(data.substr(std::min(pos, data.size())));
      return record;
    }
    if (line.front() == ' ' && !record.extra_headers.empty()) {
      record.extra_headers.back().second += "\n";
      record.extra_headers.back().second += line.substr(1);
      continue;
    }
    auto space = line.find(' ');
    std::string_view key = line.substr(0, space);
    std::string_view value =
        space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
    if (key == "tree") {
      record.tree = ObjectId::parse(value);
    } else if (key == "parent") {
      record.parents.push_back(ObjectId::parse(value));
    } else if (key == "author") {
      record.author = parse_signature(value);
    } else if (key == "committer") {
      record.committer = parse_signature(value);
    } else {
      record.extra_headers.emplace_back(std::string(key), std::string(value));
    }
  }
  return record;
}

GitObjectStore::GitObjectStore(std::filesystem::path git_dir) : git_dir_(std::move(git_dir)) {
  if (!std::filesystem::exists(git_dir_)) {
    throw Error(ErrorCode::kMissingObject, "no object store at " + git_dir_.string());
  }
}

GitObjectStore::~GitObjectStore() = default;

std::optional<GitObjectStore::RawObject> GitObjectStore::read_raw(const ObjectId& id) const {
  std::lock_guard lock(io_mutex_);
  if (!batch_) {
    batch_ = std::make_unique<PipeProcess>(std::vector<std::string>{
        "git", "--git-dir=" + git_dir_.string(), "cat-file", "--batch"});
  }
  batch_->write(std::string(id.hex()) + "\n");
  std::string header = batch_->read_line();
  // "<id> <type> <size>" or "<id> missing"
  auto first = header.find(' ');
  auto second = header.find(' ', first + 1);
  if (first == std::string::npos || second == std::string::npos) return std::nullopt;
  RawObject object;
  object.type = header.substr(first + 1, second - first - 1);
  std::size_t size = 0;
  std::from_chars(header.data() + second + 1, header.data() + header.size(), size);
  object.data = batch_->read_exact(size);
  batch_->read_exact(1);  // trailing newline
  return object;
}

bool GitObjectStore::has_object(const ObjectId& id) const {
  std::lock_guard lock(io_mutex_);
  if (!batch_check_) {
    batch_check_ = std::make_unique<PipeProcess>(std::vector<std::string>{
        "git", "--git-dir=" + git_dir_.string(), "cat-file", "--batch-check"});
  }
  batch_check_->write(std::string(id.hex()) + "\n");
  std::string header = batch_check_->read_line();
  return header.find(" missing") == std::string::npos;
}

CommitRecord GitObjectStore::commit(const ObjectId& id) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = commits_.find(id); it != commits_.end()) return it->second;
  }
  auto raw = read_raw(id);
  if (!raw || raw->type != "commit") {
    throw Error(ErrorCode::kMissingObject, "commit " + id.str() + " not found");
  }
  CommitRecord record = parse_commit_object(id, raw->data);
  std::lock_guard lock(cache_mutex_);
  return commits_.emplace(id, std::move(record)).first->second;
}

GitObjectStore::Listing GitObjectStore::flatten(const ObjectId& tree_id) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = trees_.find(tree_id); it != trees_.end()) return it->second;
  }
  auto raw = read_raw(tree_id);
  if (!raw || raw->type != "tree") {
    throw Error(ErrorCode::kMissingObject, "tree " + tree_id.str() + " not found");
  }
  auto entries = std::make_shared<std::vector<TreeEntry>>();
  std::string_view data = raw->data;
  std::size_t skipped = 0;
  while (!data.empty()) {
    auto space = data.find(' ');
    auto nul = data.find('\0', space);
    if (space == std::string_view::npos || nul == std::string_view::npos ||
        nul + 21 > data.size()) {
      throw Error(ErrorCode::kMissingObject, "corrupt tree " + tree_id.str());
    }
    std::uint32_t mode = 0;
    std::from_chars(data.data(), data.data() + space, mode, 8);
    std::string name(data.substr(space + 1, nul - space - 1));
    ObjectId child = ObjectId::from_raw(data.substr(nul + 1, 20));
    data.remove_prefix(nul + 21);

    switch (mode & 0170000) {
      case 0040000: {
        entries->push_back({name, EntryKind::kDirectory, child, mode});
        Listing sub = flatten(child);
        for (const TreeEntry& e : *sub) {
          entries->push_back({name + "/" + e.path, e.kind, e.content_id, e.mode});
        }
        break;
      }
      case 0120000:
        entries->push_back({name, EntryKind::kSymlink, child, mode});
        break;
      case 0160000:
        ++skipped;
        break;
      default:
        entries->push_back({name, EntryKind::kFile, child, mode});
    }
  }
  std::lock_guard lock(cache_mutex_);
  auto [it, inserted] = trees_.emplace(tree_id, std::move(entries));
  if (inserted) skipped_ += skipped;
  return it->second;
}

std::vector<TreeEntry> GitObjectStore::tree_entries(const ObjectId& tree_id) const {
  return *flatten(tree_id);
}

std::optional<std::string> GitObjectStore::blob(const ObjectId& id) const {
  auto raw = read_raw(id);
  if (!raw || raw->type != "blob") return std::nullopt;
  return std::move(raw->data);
}

}  // namespace historian
