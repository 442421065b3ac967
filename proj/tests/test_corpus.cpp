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

#include "doctest.h"

#include "audit/pipeline.hpp"
#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/git_object_store.hpp"
#include "corpus/generator.hpp"
#include "support.hpp"

using namespace historian;
using namespace historian::testing;

TEST_SUITE("corpus") {

TEST_CASE("kinds round-trip through their names") {
  CHECK(all_scenario_kinds().size() == 14);
  for (ScenarioKind kind : all_scenario_kinds()) {
    CHECK(scenario_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_FALSE(scenario_kind_from_string("Nope").has_value());
}

TEST_CASE("generation is deterministic") {
  TempDir tmp("corpus-det");
  for (ScenarioKind kind : {ScenarioKind::kAmendContent, ScenarioKind::kSecretPurge, ScenarioKind::kBranchMove}) {
    const auto a = generate(kind, 17, tmp / (std::string(to_string(kind)) + "-a"));
    const auto b = generate(kind, 17, tmp / (std::string(to_string(kind)) + "-b"));
    CHECK(to_json(a.truth).dump() == to_json(b.truth).dump());
    CHECK(read_file(a.truth_path) == read_file(b.truth_path));
    REQUIRE(a.archive.snapshots.size() == 2);
    REQUIRE(b.archive.snapshots.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(a.archive.snapshots[i].refs == b.archive.snapshots[i].refs);
      CHECK(a.archive.snapshots[i].snapshot_id == b.archive.snapshots[i].snapshot_id);
    }
    CHECK(ground_truth_from_json(nlohmann::json::parse(read_file(a.truth_path))).alterations.size() ==
          a.truth.alterations.size());
  }
  const auto other = generate(ScenarioKind::kAmendContent, 18, tmp / "other");
  CHECK(to_json(other.truth).dump() != to_json(generate(ScenarioKind::kAmendContent, 17, tmp / "again").truth).dump());
}

TEST_CASE("an occupied output directory is refused") {
  TempDir tmp("corpus-busy");
  (void)generate(ScenarioKind::kNoOp, 1, tmp / "x");
  try {
    (void)generate(ScenarioKind::kNoOp, 1, tmp / "x");
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("a squash names the oldest squashed commit as root") {
  TempDir tmp("corpus-squash");
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto s = generate(ScenarioKind::kRebaseSquash, seed, tmp / std::to_string(seed));
    REQUIRE(s.truth.alterations.size() == 1);
    const auto& a = s.truth.alterations[0];
    REQUIRE(a.roots.size() == 1);
    CHECK(a.altered.size() >= 2);
    GitObjectStore store(s.archive.objects_dir());
    for (const auto& p : store.commit(a.roots[0].commit).parents) CHECK_FALSE(a.altered.contains(p));
    for (const auto& id : a.altered) {
      if (id == a.roots[0].commit) continue;
      bool has_altered_parent = false;
      for (const auto& p : store.commit(id).parents) has_altered_parent = has_altered_parent || a.altered.contains(p);
      CHECK(has_altered_parent);
    }
  }
}

TEST_CASE("secret purges record what was planted") {
  TempDir tmp("corpus-secret");
  const auto s = generate(ScenarioKind::kSecretPurge, 5, tmp / "s");
  REQUIRE(s.truth.secret_paths.size() == 1);
  REQUIRE(s.truth.alterations.size() == 1);
  const auto& root = s.truth.alterations[0].roots.at(0);
  CHECK(root.category == "Dir");
  bool removed = false;
  for (const auto& f : root.files) removed = removed || (f.path == s.truth.secret_paths[0] && f.status == "Removed");
  CHECK(removed);
}

TEST_CASE("no-op scenarios alter nothing") {
  TempDir tmp("corpus-noop");
  const auto s = generate(ScenarioKind::kNoOp, 9, tmp / "n");
  CHECK(s.truth.alterations.empty());
  CHECK(oracle_detect(s.archive).branches.empty());
  CHECK(detect_archive(s.archive, {}).records.empty());
}

TEST_CASE("one seed of every kind agrees with truth and oracle") {
  TempDir tmp("corpus-sweep");
  for (ScenarioKind kind : all_scenario_kinds()) {
    CAPTURE(to_string(kind));
    const auto s = generate(kind, 2, tmp / to_string(kind));
    const auto oracle = oracle_detect(s.archive);
    DetectOptions options;
    options.workers = 1;
    for (const auto& p : compare_with_truth(detect_archive(s.archive, options).records, s.truth, &oracle)) {
      FAIL_CHECK(p);
    }
  }
}

TEST_CASE("synthetic datasets honor the mix exactly") {
  const auto records = generate_synthetic_dataset(1001, 4, {0.5, 0.25, 0.125});
  std::map<std::string, std::size_t> counts;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> keys;
  for (const auto& r : records) {
    ++counts[r.unified_branch == "main" || r.unified_branch == "development" || r.unified_branch == "pull_request"
                 ? r.unified_branch
                 : "other"];
    keys.insert({r.origin, r.raw_branch, r.altered_commit, r.snapshot_to});
    CHECK(is_valid_category_pair(r.category, r.sub_category));
    CHECK(parse_dataset_line(to_dataset_line(r), 1) == r);
  }
  CHECK(records.size() == 1001);
  CHECK(keys.size() == records.size());
  CHECK(counts["main"] == 501);  // round(500.5) rounds half away from zero
  CHECK(counts["development"] == 250);
  CHECK(counts["pull_request"] == 125);
  CHECK(counts["other"] == 125);
  CHECK(generate_synthetic_dataset(50, 4) == generate_synthetic_dataset(50, 4));
}

}  // TEST_SUITE
