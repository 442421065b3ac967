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

#include "support.hpp"

#include <atomic>
#include <random>

#include "core/errors.hpp"
#include "core/fs_util.hpp"

namespace historian::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  for (;;) {
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    if (fs::create_directories(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

WorkRepo::WorkRepo(fs::path dir) : dir_(std::move(dir)) {
  env = hermetic_git_env();
  fs::create_directories(dir_);
  git({"init", "--quiet", "--initial-branch=main", "."});
}

std::string WorkRepo::git(const std::vector<std::string>& args) const {
  ProcessOptions opts;
  opts.cwd = dir_;
  opts.env = env;
  return git_checked(args, opts).out;
}

void WorkRepo::write(const std::string& path, const std::string& content) const {
  const fs::path p = dir_ / path;
  fs::create_directories(p.parent_path());
  write_file_atomic(p, content);
}

void WorkRepo::remove(const std::string& path) const { fs::remove(dir_ / path); }

ObjectId WorkRepo::commit(const std::string& message, std::int64_t when) const {
  WorkRepo copy = *this;
  const std::string date = "@" + std::to_string(when) + " +0000";
  copy.env["GIT_AUTHOR_DATE"] = date;
  copy.env["GIT_COMMITTER_DATE"] = date;
  copy.git({"add", "--all"});
  copy.git({"commit", "--quiet", "--allow-empty", "-m", message});
  return rev("HEAD");
}

ObjectId WorkRepo::rev(const std::string& what) const {
  std::string out = git({"rev-parse", "--verify", what + "^{commit}"});
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return ObjectId::parse(out);
}

ObjectId add_commit(MemoryRepository& repo, std::vector<ObjectId> parents,
                    const std::map<std::string, std::string>& files, const std::string& message,
                    std::int64_t when) {
  CommitRecord c;
  c.parents = std::move(parents);
  c.tree = repo.add_tree_with_contents(files);
  c.author = {"Ann Author", "ann@example.test", when, 0};
  c.committer = {"Cy Committer", "cy@example.test", when, 0};
  c.message = message;
  return repo.add_commit(std::move(c));
}

Snapshot make_snapshot(const std::string& id, std::int64_t at, RefMap refs, const std::string& origin) {
  Snapshot s;
  s.origin = origin;
  s.captured_at = at;
  s.refs = std::move(refs);
  s.snapshot_id = id;
  return s;
}

fs::path cli_path() { return GH_CLI_PATH; }
fs::path source_dir() { return GH_SOURCE_DIR; }

ProcessResult run_cli(const std::vector<std::string>& args, const std::map<std::string, std::string>& env,
                      const fs::path& cwd) {
  std::vector<std::string> argv = {cli_path().string()};
  argv.insert(argv.end(), args.begin(), args.end());
  ProcessOptions opts;
  opts.env = env;
  opts.env.emplace("NO_COLOR", "1");
  opts.cwd = cwd;
  return run_process(argv, opts);
}

}  // namespace historian::testing

// Kept out of the namespace block above so the fuzzer reads top to bottom.
#include <algorithm>
#include <set>

#include "categorize/categorizer.hpp"
#include "detect/detector.hpp"

namespace historian::testing {

FuzzReport fuzz_categorizations(std::uint64_t seed, std::size_t target) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  FuzzReport report;
  const std::vector<std::string> pool = {"a.c", "b.c", "lib/x.h", "lib/y.h", "doc/z.md", "key.pem", "LICENSE"};
  int round = 0;
  while (report.categorizations < target) {
    ++round;
    MemoryRepository repo;
    std::int64_t clock = 1700000000 + round * 1000;
    std::map<std::string, std::string> files;
    for (const auto& p : pool) {
      if (pick(2) == 0) files[p] = "base " + p;
    }
    ObjectId parent = add_commit(repo, {}, files, "base\n", clock++);
    for (std::uint64_t i = 0, n = pick(3); i < n; ++i) {
      files[pool[pick(pool.size())]] = "pre " + std::to_string(round) + " " + std::to_string(i);
      parent = add_commit(repo, {parent}, files, "pre\n", clock++);
    }
    const auto parent_files = files;

    // The commit that will be rewritten: a few additions/edits, maybe a removal.
    auto root_files = parent_files;
    std::vector<std::string> touched;
    for (std::uint64_t i = 0, n = 1 + pick(4); i < n; ++i) {
      const std::string path = pool[pick(pool.size())];
      root_files[path] = "root " + std::to_string(round) + " " + path;
      touched.push_back(path);
    }
    if (pick(5) == 0 && !root_files.empty()) root_files.erase(root_files.begin());
    if (pick(12) == 0 && !parent_files.empty()) {
      root_files = parent_files;
      root_files.erase(root_files.begin());
    }
    const ObjectId root = add_commit(repo, {parent}, root_files, "root\n", clock++);
    ObjectId old_tip = root;
    for (std::uint64_t i = 0, n = pick(3); i < n; ++i) {
      auto next = root_files;
      next["tail/" + std::to_string(i)] = "tail";
      old_tip = add_commit(repo, {old_tip}, next, "tail\n", clock++);
    }

    // The rewritten side.
    ObjectId new_tip = parent;
    const std::uint64_t mode = pick(4);
    if (mode == 0) {
      // Metadata-only replacement with a random set of changed fields.
      CommitRecord c = repo.commit(root);
      c.parents = {parent};
      bool changed = false;
      if (pick(2) == 0) c.message = "reworded\n", changed = true;
      if (pick(2) == 0) c.author.email = "new@example.test", changed = true;
      if (pick(2) == 0) c.author.seconds += 60, changed = true;
      if (pick(2) == 0) c.committer.name = "Someone Else", changed = true;
      if (pick(2) == 0 || !changed) c.committer.seconds += 60;
      new_tip = repo.add_commit(c);
    } else {
      // Content rewrites: a chain whose commits carry some of the root's
      // contents, modified versions, or nothing, possibly deep.
      auto current = parent_files;
      const std::uint64_t depth = pick(14);
      for (std::uint64_t g = 0; g < depth; ++g) {
        for (const auto& path : touched) {
          const std::uint64_t r = pick(6);
          if (r == 0) {
            if (root_files.contains(path)) current[path] = root_files.at(path);
          } else if (r == 1) {
            current[path] = "changed " + std::to_string(g) + " " + path;
          } else if (r == 2) {
            current.erase(path);
          }
        }
        current["gen/" + std::to_string(g)] = std::to_string(round);
        new_tip = add_commit(repo, {new_tip}, current, "gen\n", clock++);
      }
    }

    RefMap r1{{"refs/heads/main", old_tip}};
    RefMap r2{{"refs/heads/main", new_tip}};
    if (pick(10) == 0) r2["refs/heads/backup"] = old_tip;  // still reachable elsewhere
    const Snapshot s1 = make_snapshot("s1", 1, r1);
    const Snapshot s2 = make_snapshot("s2", 2, r2);
    const SnapshotPairContext context(repo, s1, s2);
    for (const auto& alteration : detect_branch_alterations(s1, s2, repo)) {
      for (const ObjectId& cause : alteration.root_causes) {
        int deepest = 0;
        TrackOptions options;
        options.on_visit = [&](const ObjectId&, int gen) { deepest = std::max(deepest, gen); };
        const Category category = categorize(cause, context, options);
        ++report.categorizations;
        const std::string tag = category_tag(category) + "/" + sub_category_tag(category);
        ++report.by_sub_category[tag];
        auto violation = [&](const std::string& what) {
          report.violations.push_back("round " + std::to_string(round) + " " + tag + ": " + what);
        };
        if (deepest > 10) violation("visited generation " + std::to_string(deepest));
        if (const auto* meta = std::get_if<MetaChange>(&category)) {
          if (meta->fields.empty()) violation("empty META field set");
          if (repo.commit(meta->replacement).tree != repo.commit(cause).tree) violation("META with a different tree");
        } else if (const auto* dir = std::get_if<DirChange>(&category)) {
          if (dir->content_split && (dir->file_modified || dir->file_removed)) {
            violation("Content Split combined with another flag");
          }
          if (!dir->content_split && !dir->file_modified && !dir->file_removed) violation("DIR without a flag");
          if (find_replacement_candidate(cause, context)) violation("DIR despite an identical-tree candidate");
          for (std::size_t i = 0; i < dir->fates.size(); ++i) {
            const FileFate& f = dir->fates[i];
            if (i > 0 && !(dir->fates[i - 1].path < f.path)) violation("fates not path sorted");
            if (f.outcome == FileOutcome::kRemoved && f.found_in) violation("removed fate with a location");
            if (f.depth < 0 || f.depth > 10) violation("fate depth out of range");
          }
        } else if (!context.in_target(cause)) {
          violation("DifferentBranchName for an unreachable commit");
        }
      }
    }
  }
  return report;
}

}  // namespace historian::testing

namespace historian::testing {

std::vector<std::string> compare_with_truth(const std::vector<DatasetRecord>& records, const GroundTruth& truth,
                                            const OracleResult* oracle) {
  std::vector<std::string> problems;
  auto problem = [&](const std::string& what) { problems.push_back(what); };

  std::map<std::string, std::vector<const DatasetRecord*>> by_branch;
  for (const auto& r : records) {
    by_branch[r.raw_branch].push_back(&r);
    if (r.origin != truth.origin) problem("record origin " + r.origin);
    if (r.snapshot_from != truth.snapshot_from || r.snapshot_to != truth.snapshot_to) {
      problem("record snapshot pair differs on " + r.raw_branch);
    }
  }
  std::set<std::string> truth_branches;
  for (const auto& a : truth.alterations) {
    truth_branches.insert(a.branch);
    auto it = by_branch.find(a.branch);
    if (it == by_branch.end()) {
      problem("missing alteration on " + a.branch);
      continue;
    }
    std::map<ObjectId, const DatasetRecord*> roots;
    for (const DatasetRecord* r : it->second) {
      roots[ObjectId::parse(r->altered_commit)] = r;
      ObjectIdSet altered;
      for (const auto& id : r->altered) altered.insert(ObjectId::parse(id));
      if (altered != a.altered) problem("altered set differs on " + a.branch);
    }
    if (roots.size() != a.roots.size()) {
      problem(a.branch + ": " + std::to_string(roots.size()) + " root causes, expected " +
              std::to_string(a.roots.size()));
    }
    for (const auto& expected : a.roots) {
      auto found = roots.find(expected.commit);
      if (found == roots.end()) {
        problem(a.branch + ": root " + expected.commit.str() + " not reported");
        continue;
      }
      const DatasetRecord& r = *found->second;
      if (r.category != expected.category || r.sub_category != expected.sub_category) {
        problem(a.branch + ": " + r.category + "/" + r.sub_category + ", expected " + expected.category + "/" +
                expected.sub_category);
      }
      auto files = r.files;
      std::sort(files.begin(), files.end(), [](const auto& x, const auto& y) { return x.path < y.path; });
      if (files != expected.files) problem(a.branch + ": file fates differ for " + expected.commit.str());
    }
  }
  for (const auto& [branch, _] : by_branch) {
    if (!truth_branches.contains(branch)) problem("unexpected alteration on " + branch);
  }

  if (oracle != nullptr) {
    std::set<std::string> oracle_branches;
    for (const auto& [branch, result] : oracle->branches) {
      oracle_branches.insert(branch);
      const auto it = std::find_if(truth.alterations.begin(), truth.alterations.end(),
                                   [&](const auto& a) { return a.branch == branch; });
      if (it == truth.alterations.end()) {
        problem("oracle reports " + branch);
        continue;
      }
      if (result.altered != it->altered) problem("oracle altered set differs on " + branch);
      ObjectIdSet expected_roots;
      for (const auto& r : it->roots) expected_roots.insert(r.commit);
      if (result.root_causes != expected_roots) problem("oracle root causes differ on " + branch);
    }
    if (oracle_branches != truth_branches) problem("oracle and truth disagree on altered branches");
  }

  std::map<std::string, std::size_t> secret_hits;
  std::vector<std::string> license_changes;
  for (const auto& r : records) {
    for (const auto& s : r.secrets) ++secret_hits[s.path];
    for (const auto& l : r.licenses) license_changes.push_back(l.change);
  }
  for (const auto& path : truth.secret_paths) {
    if (secret_hits[path] != 1) {
      problem("secret " + path + " has " + std::to_string(secret_hits[path]) + " findings");
    }
  }
  for (const auto& path : truth.decoy_paths) {
    if (secret_hits.contains(path) && secret_hits[path] != 0) problem("decoy " + path + " flagged");
  }
  for (const auto& [path, n] : secret_hits) {
    const bool expected = std::find(truth.secret_paths.begin(), truth.secret_paths.end(), path) !=
                          truth.secret_paths.end();
    if (!expected && n > 0) problem("unexpected secret finding " + path);
  }
  if (truth.license_change) {
    if (license_changes.empty()) problem("no license finding");
    for (const auto& c : license_changes) {
      if (c != *truth.license_change) problem("license change " + c + ", expected " + *truth.license_change);
    }
  } else if (!license_changes.empty()) {
    problem("unexpected license finding " + license_changes.front());
  }
  return problems;
}

}  // namespace historian::testing
