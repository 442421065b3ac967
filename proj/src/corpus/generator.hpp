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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "db/dataset.hpp"
#include "store/snapshot_store.hpp"

namespace historian {

enum class ScenarioKind {
  kNoOp,
  kAmendMessage,
  kAmendAuthor,
  kAmendDates,
  kAmendContent,
  kRebaseSquash,
  kRebaseReorder,
  kRebaseSplit,
  kBranchMove,
  kSecretPurge,
  kLicenseUpdate,
  kLicensePartial,
  kLicenseFull,
  kMultiRootRewrite,
};

[[nodiscard]] const char* to_string(ScenarioKind kind) noexcept;
[[nodiscard]] std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name);
[[nodiscard]] const std::vector<ScenarioKind>& all_scenario_kinds();

/// Overrides for the seeded shape. Unset fields are drawn from the seed.
struct ScenarioParams {
  std::optional<int> main_length;    // commits on the main branch before the rewrite, 3..50
  std::optional<int> rewrite_at;     // index of the first rewritten main commit
  std::optional<int> side_branches;  // 0..3
  std::optional<int> variant;        // kind specific, see the generator
};

struct ExpectedRoot {
  ObjectId commit;
  std::string category;
  std::string sub_category;
  std::vector<DatasetFile> files;  // path-sorted; Dir only
};

struct ExpectedAlteration {
  std::string branch;
  ObjectIdSet altered;
  std::vector<ExpectedRoot> roots;  // sorted by commit
};

/// Written while the scenario is built, never by running the detector.
struct GroundTruth {
  ScenarioKind kind = ScenarioKind::kNoOp;
  std::uint64_t seed = 0;
  std::string variant;
  std::string origin;
  std::string snapshot_from;
  std::string snapshot_to;
  std::vector<ExpectedAlteration> alterations;  // sorted by branch
  std::vector<std::string> secret_paths;
  std::vector<std::string> decoy_paths;
  std::optional<std::string> license_change;

  [[nodiscard]] ObjectIdSet expected_altered() const;
  [[nodiscard]] ObjectIdSet expected_root_causes() const;
};

[[nodiscard]] nlohmann::ordered_json to_json(const GroundTruth& truth);
/// Throws Error(kMalformedRecord).
[[nodiscard]] GroundTruth ground_truth_from_json(const nlohmann::json& json);

struct GeneratedScenario {
  OriginArchive archive;
  GroundTruth truth;
  std::filesystem::path upstream;    // <out>/upstream.git
  std::filesystem::path truth_path;  // <out>/truth.json
};

/// Builds the base history in <out>/upstream.git with `git fast-import`,
/// captures snapshot 1 into <out>/archive, applies the scripted rewrite,
/// captures snapshot 2 and writes <out>/truth.json. Deterministic for a
/// fixed (kind, seed, params). Throws Error(kToolchainFailure) when git
/// fails and Error(kInvalidArgument) when <out> already holds a scenario.
GeneratedScenario generate(ScenarioKind kind, std::uint64_t seed, const std::filesystem::path& out,
                           const ScenarioParams& params = {});

/// "https://example.test/corpus/<kind>/<seed>"
[[nodiscard]] std::string scenario_origin(ScenarioKind kind, std::uint64_t seed);

struct OracleBranch {
  ObjectIdSet altered;
  ObjectIdSet root_causes;
};

struct OracleResult {
  std::map<std::string, OracleBranch> branches;  // only branches with alterations

  [[nodiscard]] ObjectIdSet altered() const;
  [[nodiscard]] ObjectIdSet root_causes() const;
};

/// Brute force over the first two snapshots: the commit graph comes straight
/// from `git rev-list --all --parents`, reachability from a plain DFS and root
/// causes from pairwise ancestor checks.
[[nodiscard]] OracleResult oracle_detect(const OriginArchive& archive);

/// Exact-count unified branch mix for synthetic datasets. Fractions of the
/// record count; the remainder goes to "other" feature branches.
struct SyntheticMix {
  double main = 0.5;
  double development = 0.3;
  double pull_request = 0.2;
};

/// Valid, key-unique dataset records with random categories. The number of
/// records per unified branch is exactly round(count * fraction).
[[nodiscard]] std::vector<DatasetRecord> generate_synthetic_dataset(std::size_t count,
                                                                    std::uint64_t seed,
                                                                    const SyntheticMix& mix = {});

}  // namespace historian
