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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/errors.hpp"

namespace historian {

struct ProcessOptions {
  std::filesystem::path cwd;                 // empty: inherit
  std::map<std::string, std::string> env;    // overrides on top of environ
  std::string input;                         // fed to stdin, then closed
};

struct ProcessResult {
  int exit_code = -1;  // 127 when the executable could not be started
  std::string out;
  std::string err;
};

ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& options = {});

/// A long-lived child with piped stdin/stdout (stderr discarded), used for
/// `git cat-file --batch`. Not thread-safe; callers serialize access.
class PipeProcess {
 public:
  PipeProcess(const std::vector<std::string>& argv, const ProcessOptions& options = {});
  ~PipeProcess();
  PipeProcess(const PipeProcess&) = delete;
  PipeProcess& operator=(const PipeProcess&) = delete;

  void write(std::string_view data);
  /// Line without the trailing newline; throws on EOF.
  std::string read_line();
  std::string read_exact(std::size_t n);

 private:
  bool fill();

  int pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  std::size_t pos_ = 0;
};

/// Runs `git <args>` with a locale-neutral environment.
ProcessResult git(const std::vector<std::string>& args,
                  const ProcessOptions& options = {});

/// Like git(), but throws Error(on_failure) carrying stderr when the exit code
/// is non-zero, and Error(kToolchainFailure) when git cannot be started.
ProcessResult git_checked(const std::vector<std::string>& args,
                          const ProcessOptions& options = {},
                          ErrorCode on_failure = ErrorCode::kToolchainFailure);

/// Environment that makes git ignore user/system configuration.
std::map<std::string, std::string> hermetic_git_env();

}  // namespace historian
