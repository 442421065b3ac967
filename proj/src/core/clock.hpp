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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace historian {

[[nodiscard]] std::int64_t now_micros();

/// "2026-10-16T08:30:00.000123Z"
[[nodiscard]] std::string format_rfc3339_micros(std::int64_t micros);
/// Inverse of format_rfc3339_micros; nullopt for anything else.
[[nodiscard]] std::optional<std::int64_t> parse_rfc3339_micros(std::string_view text);

/// "20261016_083000", UTC.
[[nodiscard]] std::string format_compact_utc(std::int64_t seconds);

/// SOURCE_DATE_EPOCH when set and numeric, else the wall clock.
[[nodiscard]] std::int64_t report_epoch_seconds();

}  // namespace historian
