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

namespace historian {

/// GIT_HISTORIAN_STATE_DIR, else $XDG_STATE_HOME/git-historian, else
/// ~/.local/state/git-historian.
[[nodiscard]] std::filesystem::path default_state_dir();

/// GIT_HISTORIAN_DB, else <state dir>/historian.db.
[[nodiscard]] std::filesystem::path default_database_path(const std::filesystem::path& state_dir);

}  // namespace historian
