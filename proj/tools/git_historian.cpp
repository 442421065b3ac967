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

// git-historian command line front end. Everything goes through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "githistorian/githistorian.h"

namespace {

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  return (no_color == nullptr || *no_color == '\0') && isatty(STDERR_FILENO) == 1;
}

/// Prints the failure and returns the process exit code for it.
int report_failure(gh_status status) {
  const bool color = use_color();
  std::cerr << (color ? "\033[31m" : "") << "git-historian: " << gh_status_name(status)
            << (color ? "\033[0m" : "") << ": " << gh_last_error_message() << "\n";
  return gh_status_exit_code(status);
}

/// Owns a string returned by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { gh_string_free(p); }
  [[nodiscard]] std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct DatabaseHandle {
  gh_database* db = nullptr;
  ~DatabaseHandle() { gh_database_close(db); }
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

struct CheckArgs {
  std::string url;
  std::string branch = "all";
  bool verbose = false;
  std::string format = "text";
  std::string event;
  std::string db;
};

int run_check_command(const CheckArgs& a, bool cached) {
  gh_check_options o{};
  if (gh_status s = gh_parse_branch_filter(a.branch.c_str(), &o.filter); s != GH_OK) return report_failure(s);
  if (gh_status s = gh_parse_format(a.format.c_str(), &o.format); s != GH_OK) return report_failure(s);
  DatabaseHandle h;
  if (gh_status s = gh_database_open(opt(a.db), &h.db); s != GH_OK) return report_failure(s);
  o.origin = a.url.c_str();
  o.verbose = a.verbose ? 1 : 0;
  o.event = opt(a.event);
  gh_check_result r{};
  const gh_status s = cached ? gh_check_cached(h.db, &o, &r) : gh_check(h.db, &o, &r);
  if (s != GH_OK) return report_failure(s);
  std::cerr << r.err;
  std::cout << r.out;
  std::cout.flush();
  const int code = r.exit_code;
  gh_check_result_free(&r);
  return code;
}

void add_check_options(CLI::App* cmd, CheckArgs& a) {
  cmd->add_option("url", a.url, "Repository origin URL")->required();
  cmd->add_option("--branch", a.branch, "Branch filter")->check(CLI::IsMember({"main", "dev", "all"}));
  cmd->add_flag("-v,--verbose", a.verbose, "List every record and file modification");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--event", a.event, "Triggering git event, set by the installed hooks");
  cmd->add_option("--db", a.db, "Database file (default: GIT_HISTORIAN_DB or the state directory)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detects and reports rewritten git history"};
  app.set_version_flag("--version", std::string(gh_version()));
  app.require_subcommand(1);

  // load
  std::string load_path, load_db;
  unsigned load_workers = 1;
  auto* load = app.add_subcommand("load", "Ingest an alteration dataset");
  load->add_option("path", load_path, "Newline-delimited JSON dataset")->required();
  load->add_option("--workers", load_workers, "Parser threads")->check(CLI::Range(1u, 256u));
  load->add_option("--db", load_db, "Database file");

  CheckArgs check_args, cached_args;
  auto* check = app.add_subcommand("check", "List altered history recorded for a repository");
  add_check_options(check, check_args);
  auto* check_cached = app.add_subcommand("check-cached", "check, answered from the result cache when valid");
  add_check_options(check_cached, cached_args);

  // attach
  std::string attach_path = ".", attach_branch = "main", attach_exe;
  bool attach_verbose = false;
  auto* attach = app.add_subcommand("attach", "Install monitoring hooks into a repository");
  attach->add_option("path", attach_path, "Repository working tree");
  attach->add_option("--branch", attach_branch, "Branch filter for the hooks")
      ->check(CLI::IsMember({"main", "dev", "all"}));
  attach->add_flag("-v,--verbose", attach_verbose, "Hooks run check-cached --verbose");
  attach->add_option("--executable", attach_exe, "Command the hooks invoke");

  // snapshot
  std::string snap_url, snap_root, snap_fetch;
  std::optional<std::int64_t> snap_at;
  auto* snapshot = app.add_subcommand("snapshot", "Archive the current refs and objects of a remote");
  snapshot->add_option("url", snap_url, "Origin URL")->required();
  snapshot->add_option("--archive-root", snap_root, "Archive directory")->required();
  snapshot->add_option("--fetch-url", snap_fetch, "Fetch from here instead of the origin URL");
  snapshot->add_option("--captured-at", snap_at, "Capture time in epoch seconds");

  // detect
  std::string detect_root, detect_out;
  unsigned detect_workers = 0;
  bool detect_all_licenses = false;
  auto* detect = app.add_subcommand("detect", "Find and categorize alterations across archived snapshots");
  detect->add_option("--archive-root", detect_root, "Archive directory")->required();
  detect->add_option("--out", detect_out, "Dataset to write");
  detect->add_option("--workers", detect_workers, "Worker threads, 0 for all cores");
  detect->add_flag("--all-branches-licenses", detect_all_licenses, "Scan license changes on every branch");

  // report
  std::string report_dataset, report_group = "branch";
  auto* report = app.add_subcommand("report", "Distribution of a dataset's records");
  report->add_option("--dataset", report_dataset, "Dataset file")->required();
  report->add_option("--group-by", report_group, "Grouping")
      ->check(CLI::IsMember({"branch", "category", "license-change"}));

  // generate
  std::string gen_kind, gen_out;
  std::uint64_t gen_seed = 0, gen_synthetic = 0;
  bool gen_list = false;
  auto* generate = app.add_subcommand("generate", "Build synthetic scenarios with ground truth");
  generate->add_option("--kind", gen_kind, "Scenario kind");
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--out", gen_out, "Output directory, or dataset file with --synthetic");
  generate->add_option("--synthetic", gen_synthetic, "Write this many synthetic dataset records instead");
  generate->add_flag("--list-kinds", gen_list, "Print the scenario kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (load->parsed()) {
    DatabaseHandle h;
    if (gh_status s = gh_database_open(opt(load_db), &h.db); s != GH_OK) return report_failure(s);
    gh_load_summary summary{};
    if (gh_status s = gh_database_load(h.db, load_path.c_str(), load_workers, &summary); s != GH_OK) {
      return report_failure(s);
    }
    std::cout << "inserted: " << summary.inserted << "\n"
              << "skipped: " << summary.skipped_duplicates << "\n"
              << "errors: " << summary.errors << "\n"
              << "dataset version: " << summary.dataset_version << "\n";
    std::cerr << summary.error_details;
    const int code = summary.errors > 0 ? 2 : 0;
    gh_load_summary_free(&summary);
    return code;
  }
  if (check->parsed()) return run_check_command(check_args, false);
  if (check_cached->parsed()) return run_check_command(cached_args, true);

  if (attach->parsed()) {
    gh_attach_options o{};
    o.repo_path = attach_path.c_str();
    if (gh_status s = gh_parse_branch_filter(attach_branch.c_str(), &o.filter); s != GH_OK) return report_failure(s);
    o.executable = opt(attach_exe);
    o.verbose = attach_verbose ? 1 : 0;
    Owned text;
    if (gh_status s = gh_attach(&o, &text.p); s != GH_OK) return report_failure(s);
    std::cout << text.str();
    return 0;
  }

  if (snapshot->parsed()) {
    gh_archive* archive = nullptr;
    if (gh_status s = gh_archive_open(snap_root.c_str(), snap_url.c_str(), &archive); s != GH_OK) {
      return report_failure(s);
    }
    Owned id;
    std::uint64_t refs = 0;
    const gh_status s = gh_archive_capture(archive, opt(snap_fetch), snap_at ? 1 : 0, snap_at.value_or(0), &id.p, &refs);
    const std::size_t count = gh_archive_snapshot_count(archive);
    gh_archive_close(archive);
    if (s != GH_OK) return report_failure(s);
    std::cout << "snapshot " << id.str() << " (" << refs << " refs, #" << count << " for " << snap_url << ")\n";
    return 0;
  }

  if (detect->parsed()) {
    gh_detect_options o{};
    o.archive_root = detect_root.c_str();
    o.out_path = opt(detect_out);
    o.workers = detect_workers;
    o.licenses_all_branches = detect_all_licenses ? 1 : 0;
    Owned summary;
    std::uint64_t records = 0;
    if (gh_status s = gh_detect(&o, &summary.p, &records); s != GH_OK) return report_failure(s);
    std::cout << summary.str();
    if (!detect_out.empty()) std::cout << "dataset: " << detect_out << " (" << records << " records)\n";
    return 0;
  }

  if (report->parsed()) {
    Owned table;
    if (gh_status s = gh_report(report_dataset.c_str(), report_group.c_str(), &table.p); s != GH_OK) {
      return report_failure(s);
    }
    std::cout << table.str();
    return 0;
  }

  if (generate->parsed()) {
    if (gen_list) {
      Owned names;
      if (gh_status s = gh_scenario_kinds(&names.p); s != GH_OK) return report_failure(s);
      std::cout << names.str();
      return 0;
    }
    if (gen_out.empty()) {
      std::cerr << "git-historian: generate needs --out\n";
      return 2;
    }
    if (gen_synthetic > 0) {
      if (gh_status s = gh_generate_synthetic(gen_synthetic, gen_seed, gen_out.c_str()); s != GH_OK) {
        return report_failure(s);
      }
      std::cout << "wrote " << gen_synthetic << " records to " << gen_out << "\n";
      return 0;
    }
    if (gen_kind.empty()) {
      std::cerr << "git-historian: generate needs --kind or --synthetic\n";
      return 2;
    }
    Owned truth;
    if (gh_status s = gh_generate(gen_kind.c_str(), gen_seed, gen_out.c_str(), &truth.p); s != GH_OK) {
      return report_failure(s);
    }
    std::cout << truth.str();
    return 0;
  }
  return 2;
}
