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

#include <string>

#include "categorize/categorizer.hpp"
#include "detect/detector.hpp"

namespace historian {

/// One categorized root cause of a branch alteration. Root causes of the
/// same alteration share `alteration_id`.
struct AlterationRecord {
  std::string alteration_id;
  std::string origin;
  UnifiedBranch branch;
  std::string snapshot_from;
  std::string snapshot_to;
  ObjectIdSet altered;
  ObjectId root_cause;
  Category category;
};

}  // namespace historian
