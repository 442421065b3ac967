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

#include "store/snapshot_store.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <thread>

#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/git_object_store.hpp"
#include "core/hash.hpp"
#include "core/process.hpp"

namespace historian {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kIncoming = "refs/historian/incoming/";
constexpr std::string_view kPinned = "refs/historian/snapshots/";

std::vector<Snapshot> load_snapshots(const OriginArchive& archive) {
  std::vector<Snapshot> snapshots;
  if (!fs::exists(archive.snapshots_dir())) return snapshots;
  for (const auto& entry : fs::directory_iterator(archive.snapshots_dir())) {
    if (entry.path().extension() != ".json") continue;
    json parsed = json::parse(read_file(entry.path()), nullptr, false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::kMalformedRecord, "corrupt manifest " + entry.path().string());
    }
    snapshots.push_back(manifest_from_json(parsed));
  }
  std::sort(snapshots.begin(), snapshots.end(), [](const Snapshot& a, const Snapshot& b) {
    return a.captured_at < b.captured_at;
  });
  return snapshots;
}

std::int64_t wall_clock_seconds() {
  using namespace std::chrono;
  return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

bool mentions_missing_objects(const std::string& err) {
  for (const char* needle : {"did not send all necessary objects", "missing blob",
                             "missing tree", "missing commit", "bad object",
                             "unable to read"}) {
    if (err.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::string sanitize_origin(std::string_view origin) {
  if (auto scheme = origin.find("://"); scheme != std::string_view::npos) {
    origin.remove_prefix(scheme + 3);
  }
  std::string out;
  for (char c : origin) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(c);
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "origin" : out;
}

bool is_captured_ref(std::string_view ref) {
  if (ref.starts_with("refs/heads/") || ref.starts_with("refs/tags/")) return true;
  if (!ref.starts_with("refs/pull/") || !ref.ends_with("/head")) return false;
  std::string_view number = ref.substr(10, ref.size() - 10 - 5);
  return !number.empty() &&
         std::all_of(number.begin(), number.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

OriginArchive open_archive(const fs::path& root, const std::string& origin) {
  OriginArchive archive;
  archive.origin = origin;
  archive.storage_path = root / sanitize_origin(origin);
  fs::create_directories(archive.snapshots_dir());
  const fs::path origin_file = archive.storage_path / "origin";
  if (fs::exists(origin_file)) {
    std::string stored = read_file(origin_file);
    if (stored != origin) {
      throw Error(ErrorCode::kInvalidArgument,
                  "archive directory " + archive.storage_path.string() +
                      " already holds origin '" + stored + "'");
    }
  } else {
    write_file_atomic(origin_file, origin);
  }
  if (!fs::exists(archive.objects_dir() / "HEAD")) {
    git_checked({"init", "--quiet", "--bare", archive.objects_dir().string()});
  }
  archive.snapshots = load_snapshots(archive);
  return archive;
}

std::vector<OriginArchive> list_archives(const fs::path& root) {
  std::vector<OriginArchive> archives;
  if (!fs::exists(root)) return archives;
  for (const auto& entry : fs::directory_iterator(root)) {
    const fs::path origin_file = entry.path() / "origin";
    if (!entry.is_directory() || !fs::exists(origin_file)) continue;
    OriginArchive archive;
    archive.origin = read_file(origin_file);
    archive.storage_path = entry.path();
    archive.snapshots = load_snapshots(archive);
    archives.push_back(std::move(archive));
  }
  std::sort(archives.begin(), archives.end(),
            [](const OriginArchive& a, const OriginArchive& b) { return a.origin < b.origin; });
  return archives;
}

std::string compute_snapshot_id(const std::string& origin, std::int64_t captured_at,
                                const RefMap& refs) {
  Snapshot s{origin, captured_at, refs, ""};
  json body = manifest_to_json(s);
  body.erase("snapshot_id");
  return sha1_hex(body.dump());
}

Snapshot capture(OriginArchive& archive, const CaptureOptions& options) {
  FileLock lock(archive.storage_path / "lock");
  archive.snapshots = load_snapshots(archive);
  const std::string git_dir = "--git-dir=" + archive.objects_dir().string();
  const std::string url = options.fetch_url.empty() ? archive.origin : options.fetch_url;

  ProcessResult fetch = git({git_dir, "fetch", "--quiet", "--prune", "--no-tags",
                             "--no-write-fetch-head", "--no-auto-gc", url,
                             "+refs/heads/*:refs/historian/incoming/heads/*",
                             "+refs/tags/*:refs/historian/incoming/tags/*",
                             "+refs/pull/*/head:refs/historian/incoming/pull/*/head"});
  if (fetch.exit_code != 0) {
    std::string err = fetch.err;
    while (!err.empty() && err.back() == '\n') err.pop_back();
    throw Error(mentions_missing_objects(err) ? ErrorCode::kCorruptRemote
                                              : ErrorCode::kNetworkFailure,
                "fetch from " + url + " failed: " + err);
  }

  ProcessResult listing = git_checked(
      {git_dir, "for-each-ref",
       "--format=%(refname) %(objectname) %(objecttype) %(*objectname) %(*objecttype)",
       std::string(kIncoming)});
  RefMap refs;
  GitObjectStore store(archive.objects_dir());
  std::size_t pos = 0;
  const std::string& out = listing.out;
  while (pos < out.size()) {
    auto eol = out.find('\n', pos);
    if (eol == std::string::npos) eol = out.size();
    std::string line = out.substr(pos, eol - pos);
    pos = eol + 1;
    std::vector<std::string> fields;
    for (std::size_t start = 0;;) {
      auto space = line.find(' ', start);
      fields.push_back(line.substr(start, space - start));
      if (space == std::string::npos) break;
      start = space + 1;
    }
    if (fields.size() < 3) continue;
    std::string name = "refs/" + fields[0].substr(kIncoming.size());
    if (!is_captured_ref(name)) continue;
    std::string target;
    if (fields[2] == "commit") {
      target = fields[1];
    } else if (fields[2] == "tag") {
      if (fields.size() >= 5 && fields[4] == "commit") {
        target = fields[3];
      } else {
        ProcessResult peeled =
            git({git_dir, "rev-parse", "--verify", "--quiet", fields[1] + "^{commit}"});
        if (peeled.exit_code != 0) continue;  // tag of a tree or blob
        target = peeled.out.substr(0, ObjectId::kHexLength);
      }
    } else {
      continue;
    }
    ObjectId id = ObjectId::parse(target);
    if (!store.has_object(id)) {
      throw Error(ErrorCode::kCorruptRemote, name + " points to missing object " + target);
    }
    (void)store.commit(id);
    refs.emplace(std::move(name), id);
  }

  const std::int64_t last =
      archive.snapshots.empty() ? INT64_MIN : archive.snapshots.back().captured_at;
  std::int64_t captured_at = 0;
  if (options.captured_at) {
    captured_at = *options.captured_at;
    if (captured_at <= last) {
      throw Error(ErrorCode::kNonMonotonicCapture,
                  "capture time " + std::to_string(captured_at) +
                      " does not follow the last snapshot (" + std::to_string(last) + ")");
    }
  } else {
    captured_at = wall_clock_seconds();
    while (captured_at <= last) {
      std::this_thread::sleep_for(std::chrono::seconds(1));
      captured_at = wall_clock_seconds();
    }
  }

  Snapshot snapshot{archive.origin, captured_at, std::move(refs), ""};
  snapshot.snapshot_id = compute_snapshot_id(snapshot.origin, captured_at, snapshot.refs);

  std::string updates;
  for (const auto& [name, target] : snapshot.refs) {
    updates += "create " + std::string(kPinned) + snapshot.snapshot_id + "/" +
               name.substr(5) + " " + target.str() + "\n";
  }
  if (!updates.empty()) {
    git_checked({git_dir, "update-ref", "--stdin"}, ProcessOptions{{}, {}, updates});
  }
  write_file_atomic(archive.snapshots_dir() / (snapshot.snapshot_id + ".json"),
                    manifest_to_json(snapshot).dump(2) + "\n");
  archive.snapshots.push_back(snapshot);
  return snapshot;
}

std::vector<std::pair<Snapshot, Snapshot>> list_snapshot_pairs(const OriginArchive& archive) {
  if (archive.snapshots.size() < 2) {
    throw Error(ErrorCode::kInsufficientSnapshots,
                "origin '" + archive.origin + "' has " +
                    std::to_string(archive.snapshots.size()) + " snapshot(s); need at least 2");
  }
  std::vector<std::pair<Snapshot, Snapshot>> pairs;
  for (std::size_t i = 0; i + 1 < archive.snapshots.size(); ++i) {
    pairs.emplace_back(archive.snapshots[i], archive.snapshots[i + 1]);
  }
  return pairs;
}

json manifest_to_json(const Snapshot& snapshot) {
  json refs = json::array();
  for (const auto& [name, target] : snapshot.refs) {
    refs.push_back({{"name", name}, {"target", target.str()}});
  }
  return {{"origin", snapshot.origin},
          {"captured_at", snapshot.captured_at},
          {"snapshot_id", snapshot.snapshot_id},
          {"refs", std::move(refs)}};
}

Snapshot manifest_from_json(const json& j) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kMalformedRecord, "invalid snapshot manifest: " + why);
  };
  if (!j.is_object()) fail("not an object");
  if (!j.contains("origin") || !j["origin"].is_string()) fail("missing origin");
  if (!j.contains("captured_at") || !j["captured_at"].is_number_integer()) fail("missing captured_at");
  if (!j.contains("snapshot_id") || !j["snapshot_id"].is_string()) fail("missing snapshot_id");
  if (!j.contains("refs") || !j["refs"].is_array()) fail("missing refs");
  Snapshot s;
  s.origin = j["origin"].get<std::string>();
  s.captured_at = j["captured_at"].get<std::int64_t>();
  s.snapshot_id = j["snapshot_id"].get<std::string>();
  for (const auto& ref : j["refs"]) {
    if (!ref.is_object() || !ref.contains("name") || !ref["name"].is_string() ||
        !ref.contains("target") || !ref["target"].is_string()) {
      fail("ref entries need string name and target");
    }
    const std::string target = ref["target"].get<std::string>();
    if (!ObjectId::is_valid(target)) fail("bad ref target '" + target + "'");
    if (!s.refs.emplace(ref["name"].get<std::string>(), ObjectId::parse(target)).second) {
      fail("duplicate ref " + ref["name"].get<std::string>());
    }
  }
  return s;
}

void export_dataset(const std::vector<OriginArchive>& archives, const fs::path& out) {
  std::string body;
  for (const auto& archive : archives) {
    for (const auto& snapshot : archive.snapshots) {
      body += manifest_to_json(snapshot).dump() + "\n";
    }
  }
  write_file_atomic(out, body);
}

std::vector<OriginArchive> import_dataset(const fs::path& in, const fs::path& archive_root) {
  std::ifstream stream(in);
  if (!stream) throw Error(ErrorCode::kIo, "cannot open " + in.string());
  std::vector<OriginArchive> archives;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json parsed = json::parse(line, nullptr, false);
    Snapshot snapshot;
    try {
      if (parsed.is_discarded()) {
        throw Error(ErrorCode::kMalformedRecord, "invalid JSON");
      }
      snapshot = manifest_from_json(parsed);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  in.string() + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    auto [it, inserted] = index.emplace(snapshot.origin, archives.size());
    if (inserted) {
      OriginArchive archive;
      archive.origin = snapshot.origin;
      if (!archive_root.empty()) {
        archive.storage_path = archive_root / sanitize_origin(snapshot.origin);
      }
      archives.push_back(std::move(archive));
    }
    archives[it->second].snapshots.push_back(std::move(snapshot));
  }
  for (auto& archive : archives) {
    std::stable_sort(archive.snapshots.begin(), archive.snapshots.end(),
                     [](const Snapshot& a, const Snapshot& b) { return a.captured_at < b.captured_at; });
  }
  return archives;
}

}  // namespace historian
