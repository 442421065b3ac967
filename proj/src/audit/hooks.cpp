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

#include "audit/hooks.hpp"

#include <unistd.h>

#include <sstream>

#include "core/errors.hpp"
#include "core/fs_util.hpp"
#include "core/process.hpp"

namespace historian {

namespace {

constexpr const char* kHooks[] = {"post-merge", "post-checkout"};

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

/// Single-quoted for sh.
std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void require_repository(const std::filesystem::path& repo) {
  auto r = git({"-C", repo.string(), "rev-parse", "--git-dir"});
  if (r.exit_code == 127) throw Error(ErrorCode::kToolchainFailure, "git executable not found");
  if (r.exit_code != 0) {
    throw Error(ErrorCode::kNotARepository, repo.string() + " is not a git repository");
  }
}

}  // namespace

std::string repository_remote_url(const std::filesystem::path& repo_path) {
  require_repository(repo_path);
  auto remotes = git_checked({"-C", repo_path.string(), "remote"});
  std::istringstream lines(remotes.out);
  std::vector<std::string> names;
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) names.push_back(line);
  }
  if (names.empty()) {
    throw Error(ErrorCode::kNoRemoteConfigured, repo_path.string() + " has no remote configured");
  }
  std::string name = names.front();
  for (const auto& n : names) {
    if (n == "origin") name = n;
  }
  auto url = git({"-C", repo_path.string(), "remote", "get-url", name});
  if (url.exit_code != 0 || trim(url.out).empty()) {
    throw Error(ErrorCode::kNoRemoteConfigured, "remote '" + name + "' has no URL");
  }
  return trim(url.out);
}

std::string render_hook_script(const std::string& hook, const std::string& executable,
                               const std::string& remote_url, BranchFilter filter,
                               bool verbose) {
  std::string event_logic;
  if (hook == "post-merge") {
    // git pull runs its merge with GIT_REFLOG_ACTION starting with "pull".
    event_logic =
        "case \"${GIT_REFLOG_ACTION:-}\" in\n"
        "  pull*) event=pull ;;\n"
        "  *) event=merge ;;\n"
        "esac\n";
  } else {
    event_logic = "event=checkout\n";
  }
  std::string s;
  s += "#!/bin/sh\n";
  s += std::string(kHookMarker) + "\n";
  s += "# Installed by `git-historian attach`. Runs the original " + hook + " hook, if any, first.\n";
  s += "hook_dir=$(dirname \"$0\")\n";
  s += "original_status=0\n";
  s += "if [ -x \"$hook_dir/" + hook + ".pre-githistorian\" ]; then\n";
  s += "  \"$hook_dir/" + hook + ".pre-githistorian\" \"$@\"\n";
  s += "  original_status=$?\n";
  s += "fi\n";
  s += event_logic;
  s += shell_quote(executable) + " check-cached " + shell_quote(remote_url) + " --branch " +
       to_string(filter) + (verbose ? " --verbose" : "") + " --event \"$event\"\n";
  s += "historian_status=$?\n";
  s += "if [ \"$original_status\" -ne 0 ]; then\n";
  s += "  exit \"$original_status\"\n";
  s += "fi\n";
  s += "exit \"$historian_status\"\n";
  return s;
}

AttachResult attach(const AttachOptions& options) {
  AttachResult result;
  result.repository = options.repo_path.string();
  result.remote_url = repository_remote_url(options.repo_path);
  auto hooks = git_checked({"-C", options.repo_path.string(), "rev-parse", "--git-path", "hooks"});
  std::filesystem::path dir = trim(hooks.out);
  if (dir.is_relative()) dir = options.repo_path / dir;
  result.hooks_dir = dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create hooks directory " + dir.string());

  for (const char* hook : kHooks) {
    const auto path = dir / hook;
    const auto preserved = dir / (std::string(hook) + ".pre-githistorian");
    if (std::filesystem::exists(path)) {
      const std::string existing = read_file(path);
      if (existing.find(kHookMarker) == std::string::npos) {
        if (std::filesystem::exists(preserved)) {
          throw Error(ErrorCode::kInvalidArgument,
                      preserved.string() + " already exists; refusing to overwrite it");
        }
        std::filesystem::rename(path, preserved, ec);
        if (ec) throw Error(ErrorCode::kIo, "cannot preserve " + path.string());
        result.chained.push_back(hook);
      }
    }
    write_file_atomic(path, render_hook_script(hook, options.executable, result.remote_url, options.filter,
                                                 options.verbose));
    std::filesystem::permissions(path,
                                 std::filesystem::perms::owner_all | std::filesystem::perms::group_read |
                                     std::filesystem::perms::group_exec | std::filesystem::perms::others_read |
                                     std::filesystem::perms::others_exec,
                                 ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot make " + path.string() + " executable");
    result.installed.push_back(hook);
  }
  return result;
}

std::string render_attach_text(const AttachResult& result) {
  std::string out;
  out += "  git-historian successfully attached to repository\n";
  out += "  Repository: " + result.repository + "\n";
  out += "  Remote URL: " + result.remote_url + "\n";
  out += "  Hooks installed:\n";
  out += "  - post-merge (triggered after git pull)\n";
  out += "  - post-checkout (triggered after git checkout)\n";
  return out;
}

std::string current_executable() {
  std::error_code ec;
  auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  return ec ? std::string() : p.string();
}

}  // namespace historian
