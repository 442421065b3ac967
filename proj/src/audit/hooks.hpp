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

#include <filesystem>
#include <string>
#include <vector>

#include "db/database.hpp"

namespace historian {

inline constexpr const char* kHookMarker = "# git-historian hook";

struct AttachOptions {
  std::filesystem::path repo_path = ".";
  BranchFilter filter = BranchFilter::kMainOnly;
  bool verbose = false;  // hooks run check-cached --verbose
  /// Command the hooks run; an absolute path or a name looked up on PATH.
  std::string executable = "git-historian";
};

struct AttachResult {
  std::string repository;  // as given
  std::string remote_url;
  std::filesystem::path hooks_dir;
  std::vector<std::string> installed;      // hook names
  std::vector<std::string> chained;        // foreign hooks preserved this run
};

/// Remote URL of `origin`, else of the first configured remote. Throws
/// Error(kNotARepository) or Error(kNoRemoteConfigured).
[[nodiscard]] std::string repository_remote_url(const std::filesystem::path& repo_path);

/// Writes post-merge and post-checkout scripts calling check-cached. A hook
/// already present and not ours is renamed to `<hook>.pre-githistorian` and
/// run first. Re-running replaces our scripts in place.
AttachResult attach(const AttachOptions& options);

[[nodiscard]] std::string render_hook_script(const std::string& hook, const std::string& executable,
                                             const std::string& remote_url, BranchFilter filter,
                                             bool verbose = false);

/// The confirmation block printed by `attach`.
[[nodiscard]] std::string render_attach_text(const AttachResult& result);

/// Absolute path of the running executable, or empty.
[[nodiscard]] std::string current_executable();

}  // namespace historian
