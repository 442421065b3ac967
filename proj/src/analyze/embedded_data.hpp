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
#include <string_view>

namespace historian::embedded {

struct EmbeddedFile {
  const char* name;
  std::string_view content;
};

/// data/licenses/*.txt, sorted by file name.
extern const EmbeddedFile kLicenseTemplates[];
extern const std::size_t kLicenseTemplateCount;

/// data/secret_patterns.tsv
extern const std::string_view kSecretPatterns;

}  // namespace historian::embedded
