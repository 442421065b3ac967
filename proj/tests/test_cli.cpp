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

#include <sstream>

#include "doctest.h"

#include "json.hpp"

#include "audit/check.hpp"
#include "core/fs_util.hpp"
#include "corpus/generator.hpp"
#include "db/dataset.hpp"
#include "support.hpp"

using namespace historian;
using namespace historian::testing;
namespace fs = std::filesystem;

namespace {

const std::string kOrigin = "https://github.com/example/project";

std::string golden(const std::string& name, const fs::path& state) {
  std::string text = read_file(source_dir() / "tests" / "golden" / name);
  const std::string marker = "@STATE@";
  for (auto pos = text.find(marker); pos != std::string::npos; pos = text.find(marker, pos)) {
    text.replace(pos, marker.size(), state.string());
  }
  return text;
}

/// A state directory with the golden dataset loaded.
struct Loaded {
  TempDir tmp{"cli"};
  fs::path state = tmp / "state";
  std::map<std::string, std::string> env{{"GIT_HISTORIAN_STATE_DIR", state.string()},
                                         {"SOURCE_DATE_EPOCH", "1700000000"}};
  Loaded() {
    const auto r = run_cli({"load", (source_dir() / "tests" / "golden" / "check_dataset.jsonl").string()}, env);
    REQUIRE(r.exit_code == 0);
  }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("load prints its summary") {
  TempDir tmp("cli-load");
  const std::map<std::string, std::string> env{{"GIT_HISTORIAN_STATE_DIR", (tmp / "state").string()}};
  const auto dataset = (source_dir() / "tests" / "golden" / "check_dataset.jsonl").string();
  auto r = run_cli({"load", dataset}, env);
  CHECK(r.exit_code == 0);
  CHECK(r.out.starts_with("inserted: 4\nskipped: 0\nerrors: 0\ndataset version: "));
  r = run_cli({"load", dataset}, env);
  CHECK(r.out.starts_with("inserted: 0\nskipped: 4\n"));

  write_file_atomic(tmp / "bad.jsonl", "{\n");
  r = run_cli({"load", (tmp / "bad.jsonl").string()}, env);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("errors: 1") != std::string::npos);
  CHECK(run_cli({"load", (tmp / "missing.jsonl").string()}, env).exit_code == 3);
  CHECK(run_cli({"load"}, env).exit_code == 2);
  CHECK(run_cli({"frobnicate"}, env).exit_code == 2);
  CHECK(run_cli({"--help"}, env).exit_code == 0);
}

TEST_CASE("check renders the golden listing") {
  Loaded s;
  auto r = run_cli({"check", kOrigin, "--verbose"}, s.env);
  CHECK(r.exit_code == 1);
  CHECK(r.out == golden("check_verbose.txt", s.state));
  r = run_cli({"check", kOrigin}, s.env);
  CHECK(r.out == golden("check_plain.txt", s.state));

  // The report file always holds the verbose listing.
  const std::string verbose = golden("check_verbose.txt", s.state);
  const std::string listing = verbose.substr(0, verbose.find("Results saved to:"));
  CHECK(read_file(s.state / "altered_history_github_com_example_project_20231114_221320.txt") == listing);

  r = run_cli({"check", kOrigin, "--branch", "main"}, s.env);
  CHECK(r.out.starts_with("Found 2 altered history records"));
  r = run_cli({"check", kOrigin, "--branch", "dev"}, s.env);
  CHECK(r.exit_code == 0);
  CHECK(r.out.starts_with("Found 0 altered history records"));
  CHECK(run_cli({"check", "https://github.com/unknown/repo"}, s.env).exit_code == 0);
  CHECK(run_cli({"check", kOrigin, "--branch", "nope"}, s.env).exit_code == 2);
}

TEST_CASE("JSON output carries the same records as text") {
  Loaded s;
  const auto r = run_cli({"check", kOrigin, "--format", "json", "--verbose"}, s.env);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("Results saved to:") != std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  const std::string text = run_cli({"check", kOrigin, "--verbose"}, s.env).out;
  std::size_t files = 0;
  for (const auto& rec : j) {
    const std::string commit = rec["altered_commit"];
    CHECK(commit.size() == 40);
    CHECK(text.find("Altered Commit: " + commit.substr(0, 15) + "...") != std::string::npos);
    CHECK(text.find("Branch Name: " + rec["branch"].get<std::string>()) != std::string::npos);
    CHECK(text.find("Sub Category: " + rec["sub_category"].get<std::string>()) != std::string::npos);
    CHECK(rec["origin"] == kOrigin);
    for (const auto& f : rec["files"]) {
      ++files;
      CHECK(text.find("File Path: " + f["path"].get<std::string>() + "\n  Status: " +
                      f["status"].get<std::string>()) != std::string::npos);
    }
  }
  CHECK(files == 2);
}

TEST_CASE("check-cached replays check and notes the hit") {
  Loaded s;
  const auto first = run_cli({"check-cached", kOrigin, "--verbose"}, s.env);
  CHECK(first.err.find("(cached)") == std::string::npos);
  const auto second = run_cli({"check-cached", kOrigin, "--verbose"}, s.env);
  CHECK(second.err.find("(cached)") != std::string::npos);
  CHECK(second.out == first.out);
  CHECK(second.exit_code == first.exit_code);
  CHECK(second.out == run_cli({"check", kOrigin, "--verbose"}, s.env).out);
  // Different options are different entries.
  CHECK(run_cli({"check-cached", kOrigin}, s.env).err.find("(cached)") == std::string::npos);
}

TEST_CASE("attach installs chained hooks") {
  TempDir tmp("cli-attach");
  WorkRepo work(tmp / "work");
  work.write("a", "a");
  work.commit("a", 1700000000);

  auto r = run_cli({"attach", work.dir().string()});
  CHECK(r.exit_code == 5);
  CHECK(run_cli({"attach", (tmp / "nowhere").string()}).exit_code == 5);

  work.git({"remote", "add", "origin", kOrigin});
  const fs::path hooks = work.dir() / ".git" / "hooks";
  fs::create_directories(hooks);
  write_file_atomic(hooks / "post-checkout", "#!/bin/sh\necho ran > \"$(dirname \"$0\")/original-ran\"\nexit 3\n");
  fs::permissions(hooks / "post-checkout", fs::perms::owner_all);

  r = run_cli({"attach", work.dir().string(), "--executable", cli_path().string()});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("Remote URL: " + kOrigin) != std::string::npos);
  CHECK(fs::exists(hooks / "post-checkout.pre-githistorian"));
  const std::string script = read_file(hooks / "post-merge");
  CHECK(script.find("check-cached '" + kOrigin + "' --branch main") != std::string::npos);

  // Running the hook keeps the original hook's status and still checks.
  const std::string state = (tmp / "state").string();
  ProcessOptions opts;
  opts.env = {{"GIT_HISTORIAN_STATE_DIR", state}, {"NO_COLOR", "1"}};
  opts.cwd = work.dir();
  const auto hook = run_process({"sh", (hooks / "post-checkout").string(), "0", "0", "1"}, opts);
  CHECK(hook.exit_code == 3);
  CHECK(fs::exists(hooks / "original-ran"));
  CHECK(hook.err.find("after checkout") != std::string::npos);
  CHECK(hook.out.starts_with("Found 0 altered history records"));

  // Re-attaching is idempotent.
  r = run_cli({"attach", work.dir().string(), "--executable", cli_path().string()});
  CHECK(r.exit_code == 0);
  CHECK(read_file(hooks / "post-merge") == script);
  CHECK(read_file(hooks / "post-checkout.pre-githistorian").find("original-ran") != std::string::npos);
}

TEST_CASE("snapshot, detect and report") {
  TempDir tmp("cli-pipeline");
  const auto archive = (tmp / "archive").string();
  auto r = run_cli({"snapshot", "https://example.test/x", "--archive-root", archive, "--fetch-url",
                    (tmp / "missing.git").string()});
  CHECK(r.exit_code == 6);

  WorkRepo work(tmp / "work");
  work.write("f", "1");
  work.commit("one", 1700000000);
  work.write("f", "2");
  work.commit("two", 1700000100);
  r = run_cli({"snapshot", "https://example.test/x", "--archive-root", archive, "--fetch-url", work.dir().string(),
               "--captured-at", "100"});
  CHECK(r.exit_code == 0);
  work.env["GIT_COMMITTER_DATE"] = "@1700000200 +0000";
  work.git({"commit", "--quiet", "--amend", "-m", "two, reworded"});
  r = run_cli({"snapshot", "https://example.test/x", "--archive-root", archive, "--fetch-url", work.dir().string(),
               "--captured-at", "200"});
  CHECK(r.exit_code == 0);
  CHECK(run_cli({"snapshot", "https://example.test/x", "--archive-root", archive, "--fetch-url",
                 work.dir().string(), "--captured-at", "150"})
            .exit_code == 2);

  const auto dataset = (tmp / "d.jsonl").string();
  r = run_cli({"detect", "--archive-root", archive, "--out", dataset, "--workers", "1"});
  REQUIRE(r.exit_code == 0);
  const auto records = read_dataset(dataset);
  REQUIRE(records.size() == 1);
  CHECK(records[0].category == "Meta");
  CHECK(records[0].sub_category == "Message,CommitterDate");

  r = run_cli({"report", "--dataset", dataset, "--group-by", "category"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Meta") != std::string::npos);
  CHECK(r.out.find("100.00%") != std::string::npos);

  write_file_atomic(tmp / "empty.jsonl", "");
  r = run_cli({"report", "--dataset", (tmp / "empty.jsonl").string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "no records\n");
}

TEST_CASE("synthetic mix report has exact counts") {
  TempDir tmp("cli-synth");
  const auto path = (tmp / "s.jsonl").string();
  REQUIRE(run_cli({"generate", "--synthetic", "1000", "--seed", "3", "--out", path}).exit_code == 0);
  const auto r = run_cli({"report", "--dataset", path, "--group-by", "branch"});
  REQUIRE(r.exit_code == 0);
  std::map<std::string, std::pair<std::string, std::string>> rows;
  std::istringstream table(r.out);
  std::string header;
  std::getline(table, header);
  for (std::string name, count, percent; table >> name >> count;) {
    if (name != "total") table >> percent;
    rows[name] = {count, percent};
  }
  CHECK(rows["main"] == std::pair<std::string, std::string>{"500", "50.00%"});
  CHECK(rows["development"] == std::pair<std::string, std::string>{"300", "30.00%"});
  CHECK(rows["pull_request"] == std::pair<std::string, std::string>{"200", "20.00%"});
  CHECK(rows["total"].first == "1000");
  CHECK(rows.size() == 4);
}

TEST_CASE("generate lists kinds and rejects unknown ones") {
  auto r = run_cli({"generate", "--list-kinds"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("RebaseSquash") != std::string::npos);
  TempDir tmp("cli-gen");
  CHECK(run_cli({"generate", "--kind", "Nope", "--out", (tmp / "x").string()}).exit_code == 2);
}

}  // TEST_SUITE
