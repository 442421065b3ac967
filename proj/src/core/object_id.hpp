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

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

namespace historian {

/// SHA-1 object name, stored as 40 lowercase hex characters.
class ObjectId {
 public:
  static constexpr std::size_t kHexLength = 40;

  /// Accepts upper or lower case; throws Error(kMalformedId) otherwise.
  static ObjectId parse(std::string_view text);

  /// Returns false instead of throwing.
  static bool is_valid(std::string_view text) noexcept;

  /// Builds an id from the 20 raw digest bytes found in tree objects.
  static ObjectId from_raw(std::string_view raw20);

  ObjectId() = default;

  [[nodiscard]] std::string_view hex() const noexcept {
    return {hex_.data(), hex_.size()};
  }
  [[nodiscard]] std::string str() const { return std::string(hex()); }

  /// Abbreviated form used in text reports ("a1b2c3d4e5f6789...").
  [[nodiscard]] std::string abbreviated(std::size_t digits = 15) const;

  [[nodiscard]] bool is_null() const noexcept { return hex_[0] == '\0'; }

  friend bool operator==(const ObjectId&, const ObjectId&) = default;
  friend std::strong_ordering operator<=>(const ObjectId& a,
                                          const ObjectId& b) noexcept {
    return a.hex() <=> b.hex();
  }

 private:
  std::array<char, kHexLength> hex_{};
};

using ObjectIdSet = std::set<ObjectId>;

}  // namespace historian

template <>
struct std::hash<historian::ObjectId> {
  std::size_t operator()(const historian::ObjectId& id) const noexcept {
    // The name is already a uniformly distributed digest.
    std::size_t h = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      char c = id.hex()[i];
      h = (h << 4) | static_cast<std::size_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    return h;
  }
};

namespace historian {
using ObjectIdHashSet = std::unordered_set<ObjectId>;
}
