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

#include "audit/state.hpp"

#include <pwd.h>
#include <unistd.h>

#include <cstdlib>

namespace historian {

namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? v : nullptr;
}

}  // namespace

std::filesystem::path default_state_dir() {
  if (const char* dir = env("GIT_HISTORIAN_STATE_DIR")) return dir;
  if (const char* xdg = env("XDG_STATE_HOME")) return std::filesystem::path(xdg) / "git-historian";
  std::filesystem::path home;
  if (const char* h = env("HOME")) {
    home = h;
  } else if (const passwd* pw = ::getpwuid(::getuid()); pw != nullptr && pw->pw_dir != nullptr) {
    home = pw->pw_dir;
  } else {
    home = ".";
  }
  return home / ".local" / "state" / "git-historian";
}

std::filesystem::path default_database_path(const std::filesystem::path& state_dir) {
  if (const char* db = env("GIT_HISTORIAN_DB")) return db;
  return state_dir / "historian.db";
}

}  // namespace historian
