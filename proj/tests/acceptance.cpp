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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "analyze/licenses.hpp"
#include "audit/pipeline.hpp"
#include "categorize/categorizer.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "corpus/generator.hpp"
#include "db/database.hpp"
#include "detect/detector.hpp"
#include "store/snapshot_store.hpp"
#include "support.hpp"

using namespace historian;
using namespace historian::testing;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kAc1Seconds = 5.0;
constexpr double kAc3Seconds = 600.0;
constexpr int kAc3SeedsPerKind = 15;
constexpr std::size_t kAc4Categorizations = 1000;
constexpr int kAc5MaxDepth = 10;
constexpr double kAc7SelfScore = 0.99;
constexpr std::size_t kAc10Records = 10000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failed expectations; the first few go into the detail line.
struct Checks {
  std::vector<std::string> failed;
  void expect(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (failed.empty()) return {true, summary};
    std::string d = summary + "; " + std::to_string(failed.size()) + " failed: ";
    for (std::size_t i = 0; i < failed.size() && i < 3; ++i) d += (i ? " | " : "") + failed[i];
    return {false, d};
  }
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::vector<DatasetRecord> detect_records(const OriginArchive& archive) {
  DetectOptions options;
  options.workers = 1;
  return detect_archive(archive, options).records;
}

Outcome ac1_amend_message() {
  TempDir tmp("ac1");
  WorkRepo work(tmp / "work");
  work.write("f.txt", "1\n");
  const ObjectId c1 = work.commit("one", 1700000000);
  work.write("f.txt", "2\n");
  const ObjectId c2 = work.commit("two", 1700000100);
  work.write("f.txt", "3\n");
  const ObjectId c3 = work.commit("three", 1700000200);
  (void)c1;

  const auto start = Clock::now();
  OriginArchive archive = open_archive(tmp / "archive", "https://example.test/ac1");
  CaptureOptions capture_options;
  capture_options.fetch_url = work.dir().string();
  capture_options.captured_at = 1000;
  (void)capture(archive, capture_options);

  // Reword c2 while keeping both of its dates, then replay c3 with its own.
  work.git({"checkout", "--quiet", "--detach", c2.str()});
  WorkRepo amend = work;
  amend.env["GIT_COMMITTER_DATE"] = "@1700000100 +0000";
  amend.git({"commit", "--quiet", "--amend", "-m", "two, reworded"});
  WorkRepo pick = work;
  pick.env["GIT_COMMITTER_DATE"] = "@1700000200 +0000";
  pick.git({"cherry-pick", c3.str()});
  work.git({"branch", "--quiet", "-f", "main", "HEAD"});
  capture_options.captured_at = 2000;
  (void)capture(archive, capture_options);

  const auto records = detect_records(archive);
  const double elapsed = seconds_since(start);
  Checks c;
  c.expect(records.size() == 1, "expected one record, got " + std::to_string(records.size()));
  if (records.size() == 1) {
    const auto& r = records[0];
    c.expect(std::set<std::string>(r.altered.begin(), r.altered.end()) == std::set<std::string>{c2.str(), c3.str()},
             "altered set is not {c2, c3}");
    c.expect(r.altered_commit == c2.str(), "root cause is not c2");
    c.expect(r.category == "Meta" && r.sub_category == "Message", "category " + r.category + "/" + r.sub_category);
  }
  c.expect(elapsed < kAc1Seconds, "took " + fmt_seconds(elapsed));
  return c.outcome("altered {c2,c3}, root c2, Meta/Message in " + fmt_seconds(elapsed));
}

Outcome ac2_squash() {
  Checks c;
  TempDir tmp("ac2");
  WorkRepo work(tmp / "work");
  work.write("README", "r\n");
  const ObjectId a = work.commit("a", 1700000000);
  work.write("x.c", "int x = 1;\n");
  const ObjectId b = work.commit("b", 1700000100);
  work.write("x.c", "int x = 2;\n");
  const ObjectId cc = work.commit("c", 1700000200);
  OriginArchive archive = open_archive(tmp / "archive", "https://example.test/ac2");
  CaptureOptions capture_options;
  capture_options.fetch_url = work.dir().string();
  capture_options.captured_at = 1000;
  (void)capture(archive, capture_options);
  work.git({"reset", "--quiet", "--soft", a.str()});
  work.commit("b and c", 1700000300);
  capture_options.captured_at = 2000;
  (void)capture(archive, capture_options);

  const auto records = detect_records(archive);
  c.expect(records.size() == 1, "expected one record, got " + std::to_string(records.size()));
  if (records.size() == 1) {
    const auto& r = records[0];
    c.expect(std::set<std::string>(r.altered.begin(), r.altered.end()) == std::set<std::string>{b.str(), cc.str()},
             "altered set is not {b, c}");
    c.expect(r.altered_commit == b.str(), "root cause is not b");
    c.expect(r.category == "Dir" && r.sub_category == "FileModified", "category " + r.category + "/" + r.sub_category);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = generate(ScenarioKind::kRebaseSquash, seed, tmp / ("seed" + std::to_string(seed)));
    for (const auto& p : compare_with_truth(detect_records(s.archive), s.truth)) {
      c.expect(false, "squash seed " + std::to_string(seed) + ": " + p);
    }
  }
  return c.outcome("fixture root b, Dir/FileModified; 5 generated squashes match truth");
}

Outcome ac3_corpus() {
  Checks c;
  TempDir tmp("ac3");
  const auto start = Clock::now();
  std::size_t scenarios = 0, agreeing = 0, records = 0;
  for (ScenarioKind kind : all_scenario_kinds()) {
    for (int seed = 1; seed <= kAc3SeedsPerKind; ++seed) {
      const auto dir = tmp / (std::string(to_string(kind)) + "-" + std::to_string(seed));
      const auto s = generate(kind, static_cast<std::uint64_t>(seed), dir);
      const auto oracle = oracle_detect(s.archive);
      const auto found = detect_records(s.archive);
      const auto problems = compare_with_truth(found, s.truth, &oracle);
      ++scenarios;
      records += found.size();
      if (problems.empty()) ++agreeing;
      for (const auto& p : problems) c.expect(false, std::string(to_string(kind)) + "/" + std::to_string(seed) + ": " + p);
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < kAc3Seconds, "took " + fmt_seconds(elapsed));
  return c.outcome(std::to_string(agreeing) + "/" + std::to_string(scenarios) + " scenarios agree with truth and oracle (" +
                   std::to_string(records) + " records) in " + fmt_seconds(elapsed));
}

Outcome ac4_taxonomy() {
  const FuzzReport report = fuzz_categorizations(2024, kAc4Categorizations);
  Checks c;
  for (const auto& v : report.violations) c.expect(false, v);
  std::set<std::string> categories;
  for (const auto& [tag, n] : report.by_sub_category) categories.insert(tag.substr(0, tag.find('/')));
  c.expect(categories == std::set<std::string>{"DifferentBranchName", "Dir", "Meta"},
           "not every category was exercised");
  c.expect(report.categorizations >= kAc4Categorizations, "too few categorizations");
  return c.outcome(std::to_string(report.categorizations) + " categorizations, " +
                   std::to_string(report.by_sub_category.size()) + " distinct subcategories");
}

Outcome ac5_depth_bound() {
  Checks c;
  MemoryRepository repo;
  const ObjectId base = add_commit(repo, {}, {{"README", "r"}}, "base\n");
  const ObjectId root = add_commit(repo, {base}, {{"README", "r"}, {"planted.txt", "P"}}, "plant\n");
  for (int depth : {kAc5MaxDepth, kAc5MaxDepth + 1}) {
    ObjectId tip = base;
    for (int g = 1; g <= 100; ++g) {
      std::map<std::string, std::string> files{{"README", "r"}, {"step", std::to_string(depth) + ":" + std::to_string(g)}};
      if (g >= depth) files["planted.txt"] = "P";
      tip = add_commit(repo, {tip}, files, "step\n", 1700000000 + g);
    }
    const Snapshot s1 = make_snapshot("s1", 1, {{"refs/heads/main", root}});
    const Snapshot s2 = make_snapshot("s2", 2, {{"refs/heads/main", tip}});
    const SnapshotPairContext context(repo, s1, s2);
    int deepest = 0;
    std::size_t visits = 0;
    TrackOptions options;
    options.on_visit = [&](const ObjectId&, int gen) {
      deepest = std::max(deepest, gen);
      ++visits;
    };
    const Category category = categorize(root, context, options);
    const auto* dir = std::get_if<DirChange>(&category);
    c.expect(dir != nullptr && dir->fates.size() == 1, "depth " + std::to_string(depth) + ": not a one-file DIR");
    if (dir != nullptr && dir->fates.size() == 1) {
      const FileOutcome want = depth <= kAc5MaxDepth ? FileOutcome::kFoundIdentical : FileOutcome::kRemoved;
      c.expect(dir->fates[0].outcome == want, "depth " + std::to_string(depth) + ": outcome " + to_string(dir->fates[0].outcome));
    }
    c.expect(deepest <= kAc5MaxDepth, "visited generation " + std::to_string(deepest));
    c.expect(visits <= static_cast<std::size_t>(kAc5MaxDepth), "visited " + std::to_string(visits) + " commits");
  }
  return c.outcome("found at depth 10, removed at depth 11, search never past generation 10");
}

Outcome ac6_secrets() {
  Checks c;
  TempDir tmp("ac6");
  std::size_t secrets = 0, decoys = 0;
  for (int variant = 0; variant < 10; ++variant) {
    ScenarioParams params;
    params.variant = variant;
    const auto s = generate(ScenarioKind::kSecretPurge, 100 + static_cast<std::uint64_t>(variant),
                            tmp / std::to_string(variant), params);
    std::map<std::string, std::size_t> hits;
    for (const auto& r : detect_records(s.archive)) {
      for (const auto& f : r.secrets) ++hits[f.path];
    }
    for (const auto& p : s.truth.secret_paths) {
      ++secrets;
      c.expect(hits[p] == 1, "variant " + std::to_string(variant) + ": " + p + " has " + std::to_string(hits[p]) + " findings");
    }
    for (const auto& p : s.truth.decoy_paths) {
      ++decoys;
      c.expect(hits[p] == 0, "variant " + std::to_string(variant) + ": decoy " + p + " flagged");
    }
    std::size_t total = 0;
    for (const auto& [_, n] : hits) total += n;
    c.expect(total == s.truth.secret_paths.size(), "variant " + std::to_string(variant) + ": extra findings");
  }
  return c.outcome(std::to_string(secrets) + " secrets found once each, " + std::to_string(decoys) + " decoys clean");
}

Outcome ac7_licenses() {
  Checks c;
  TempDir tmp("ac7");
  struct Case {
    ScenarioKind kind;
    std::vector<std::string> before, after;
    std::string change;
  };
  const std::vector<Case> cases = {
      {ScenarioKind::kLicenseUpdate, {"GPL-2.0"}, {"GPL-3.0"}, "LicenseUpdate"},
      {ScenarioKind::kLicenseFull, {"MIT"}, {"GPL-3.0"}, "FullChange"},
      {ScenarioKind::kLicensePartial, {"GPL-2.0", "MIT"}, {"Apache-2.0", "MIT"}, "PartialChange"},
  };
  for (const auto& k : cases) {
    ScenarioParams params;
    params.variant = 0;
    const auto s = generate(k.kind, 7, tmp / to_string(k.kind), params);
    std::vector<DatasetLicense> found;
    for (const auto& r : detect_records(s.archive)) found.insert(found.end(), r.licenses.begin(), r.licenses.end());
    c.expect(found.size() == 1, std::string(to_string(k.kind)) + ": " + std::to_string(found.size()) + " findings");
    if (found.size() == 1) {
      auto before = found[0].before, after = found[0].after;
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      c.expect(before == k.before && after == k.after, std::string(to_string(k.kind)) + ": wrong license sets");
      c.expect(found[0].change == k.change, std::string(to_string(k.kind)) + ": " + found[0].change);
    }
  }
  const auto& classifier = LicenseClassifier::builtin();
  const auto templates = classifier.templates();
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const double score = classifier.scores(classifier.template_text(i))[i];
    c.expect(score >= kAc7SelfScore, templates[i].str() + " self score " + std::to_string(score));
    c.expect(classifier.detect(classifier.template_text(i)) == LicenseSet{templates[i]},
             templates[i].str() + " not recognized alone");
  }
  // Exactly at the gate is not enough.
  c.expect(LicenseClassifier::kGate == 0.90, "gate moved");
  LicenseClassifier gate;
  const std::string words = "alpha bravo charlie delta echo foxtrot golf hotel india juliet kilo lima mike november";
  gate.add_template(parse_license_id("MIT"), words);  // 14 tokens, 10 shingles
  const std::string nine = words.substr(0, words.rfind(' '));  // 9 of 10 shingles
  c.expect(gate.scores(nine)[0] == 0.90, "expected a score of exactly 0.90");
  c.expect(gate.detect(nine).empty(), "score equal to the gate was accepted");
  c.expect(gate.detect(words).size() == 1, "full template text rejected");
  return c.outcome("update, full and partial changes classified; " + std::to_string(templates.size()) +
                   " templates self-recognize; gate strict at 0.90");
}

Outcome ac8_cli_output() {
  Checks c;
  TempDir tmp("ac8");
  const fs::path state = tmp / "state";
  const std::map<std::string, std::string> env{{"GIT_HISTORIAN_STATE_DIR", state.string()},
                                               {"SOURCE_DATE_EPOCH", "1700000000"}};
  const fs::path golden_dir = source_dir() / "tests" / "golden";
  const auto load = run_cli({"load", (golden_dir / "check_dataset.jsonl").string()}, env);
  c.expect(load.exit_code == 0, "load failed: " + load.err);
  std::string expected = read_file(golden_dir / "check_verbose.txt");
  expected.replace(expected.find("@STATE@"), 7, state.string());
  const auto check = run_cli({"check", "https://github.com/example/project", "--verbose"}, env);
  c.expect(check.out == expected, "check --verbose differs from the golden listing");
  c.expect(check.exit_code == 1, "exit code " + std::to_string(check.exit_code));

  WorkRepo work(tmp / "work");
  work.write("a", "a");
  work.commit("a", 1700000000);
  work.git({"remote", "add", "origin", "https://github.com/example/project"});
  auto installed = [&] {
    std::set<std::string> names;
    for (const auto& e : fs::directory_iterator(work.dir() / ".git" / "hooks")) {
      const std::string name = e.path().filename().string();
      if (!name.ends_with(".sample")) names.insert(name);
    }
    return names;
  };
  const auto first = run_cli({"attach", work.dir().string()}, env);
  c.expect(first.exit_code == 0, "attach failed: " + first.err);
  const auto hooks = installed();
  c.expect(hooks == std::set<std::string>{"post-checkout", "post-merge"}, "unexpected hook set");
  const std::string script = read_file(work.dir() / ".git" / "hooks" / "post-merge");
  const auto second = run_cli({"attach", work.dir().string()}, env);
  c.expect(second.exit_code == 0 && second.out == first.out, "second attach differs");
  c.expect(installed() == hooks && read_file(work.dir() / ".git" / "hooks" / "post-merge") == script,
           "second attach changed the hooks");
  return c.outcome("golden verbose listing matches; attach installs post-merge and post-checkout, idempotently");
}

Outcome ac9_cache() {
  Checks c;
  TempDir tmp("ac9");
  const std::map<std::string, std::string> env{{"GIT_HISTORIAN_STATE_DIR", (tmp / "state").string()},
                                               {"SOURCE_DATE_EPOCH", "1700000000"}};
  const fs::path golden_dir = source_dir() / "tests" / "golden";
  (void)run_cli({"load", (golden_dir / "check_dataset.jsonl").string()}, env);
  const std::string origin = "https://github.com/example/project";
  for (const char* format : {"text", "json"}) {
    const auto fresh = run_cli({"check", origin, "--verbose", "--format", format}, env);
    const auto miss = run_cli({"check-cached", origin, "--verbose", "--format", format}, env);
    const auto hit = run_cli({"check-cached", origin, "--verbose", "--format", format}, env);
    c.expect(miss.out == fresh.out && hit.out == fresh.out, std::string(format) + ": cached output differs");
    c.expect(hit.exit_code == fresh.exit_code, std::string(format) + ": exit code differs");
    c.expect(miss.err.find("(cached)") == std::string::npos, std::string(format) + ": first call claims a hit");
    c.expect(hit.err.find("(cached)") != std::string::npos, std::string(format) + ": second call missed");
  }
  write_file_atomic(tmp / "more.jsonl",
                    "{\"origin\":\"" + origin + "\",\"raw_branch\":\"refs/heads/main\",\"altered_commit\":\"" +
                        std::string(40, 'c') +
                        "\",\"snapshot_from\":\"a\",\"snapshot_to\":\"b\",\"category\":\"Meta\",\"sub_category\":\"Author\"}\n");
  (void)run_cli({"load", (tmp / "more.jsonl").string()}, env);
  const auto after = run_cli({"check-cached", origin, "--verbose"}, env);
  c.expect(after.err.find("(cached)") == std::string::npos, "load did not invalidate the cache");
  c.expect(after.out.starts_with("Found 4 altered history records"), "stale record count after load");
  return c.outcome("hits replay check byte for byte in text and JSON; a load invalidates");
}

Outcome ac10_idempotent_load() {
  Checks c;
  TempDir tmp("ac10");
  std::string text;
  for (const auto& r : generate_synthetic_dataset(kAc10Records, 10)) text += to_dataset_line(r) + "\n";
  Database serial(tmp / "serial.db");
  std::istringstream in1(text);
  const LoadSummary first = serial.load_records(in1, 1);
  const std::string digest = serial.state_digest();
  std::istringstream in2(text);
  const LoadSummary second = serial.load_records(in2, 1);
  c.expect(first.inserted == kAc10Records && first.errors == 0, "first load inserted " + std::to_string(first.inserted));
  c.expect(second.inserted == 0 && second.skipped_duplicates == kAc10Records, "second load was not all duplicates");
  c.expect(serial.state_digest() == digest, "digest changed on reload");
  c.expect(second.dataset_version > first.dataset_version, "dataset version did not advance");

  Database parallel(tmp / "parallel.db");
  std::istringstream in3(text);
  (void)parallel.load_records(in3, 4);
  c.expect(parallel.state_digest() == digest, "4-worker load differs from serial");
  return c.outcome(std::to_string(kAc10Records) + " records; reload is a no-op; 4 workers match serial");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1_amend_message}, {"AC2", ac2_squash},      {"AC3", ac3_corpus},   {"AC4", ac4_taxonomy},
      {"AC5", ac5_depth_bound},   {"AC6", ac6_secrets},     {"AC7", ac7_licenses}, {"AC8", ac8_cli_output},
      {"AC9", ac9_cache},         {"AC10", ac10_idempotent_load},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
