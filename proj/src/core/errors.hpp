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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace historian {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedId,
  kMalformedRecord,
  kMissingObject,
  kInsufficientSnapshots,
  kNetworkFailure,
  kCorruptRemote,
  kNonMonotonicCapture,
  kStorageFailure,
  kNotARepository,
  kNoRemoteConfigured,
  kIdenticalCommits,
  kToolchainFailure,
  kIo,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the core carries one of the codes above; the C API
/// translates them into gh_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Error(ErrorCode code, const std::string& message, std::size_t line)
      : std::runtime_error(message), code_(code), line_(line) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  /// 1-based input line for kMalformedRecord raised by line-oriented readers.
  [[nodiscard]] std::optional<std::size_t> line() const noexcept {
    return line_;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace historian
