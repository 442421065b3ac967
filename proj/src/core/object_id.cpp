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

#include "core/object_id.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace historian {

namespace {

constexpr bool is_hex(char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

constexpr char lower(char c) noexcept {
  return (c >= 'A' && c <= 'F') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

bool ObjectId::is_valid(std::string_view text) noexcept {
  return text.size() == kHexLength && std::all_of(text.begin(), text.end(), is_hex);
}

ObjectId ObjectId::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw Error(ErrorCode::kMalformedId,
                "malformed object id '" + std::string(text.substr(0, 64)) + "'");
  }
  ObjectId id;
  std::transform(text.begin(), text.end(), id.hex_.begin(), lower);
  return id;
}

ObjectId ObjectId::from_raw(std::string_view raw20) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (raw20.size() != kHexLength / 2) {
    throw Error(ErrorCode::kMalformedId, "raw object id must be 20 bytes");
  }
  ObjectId id;
  for (std::size_t i = 0; i < raw20.size(); ++i) {
    auto byte = static_cast<unsigned char>(raw20[i]);
    id.hex_[2 * i] = kDigits[byte >> 4];
    id.hex_[2 * i + 1] = kDigits[byte & 0x0f];
  }
  return id;
}

std::string ObjectId::abbreviated(std::size_t digits) const {
  if (digits >= kHexLength) return str();
  return std::string(hex().substr(0, digits)) + "...";
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedId: return "MalformedId";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kMissingObject: return "MissingObject";
    case ErrorCode::kInsufficientSnapshots: return "InsufficientSnapshots";
    case ErrorCode::kNetworkFailure: return "NetworkFailure";
    case ErrorCode::kCorruptRemote: return "CorruptRemote";
    case ErrorCode::kNonMonotonicCapture: return "NonMonotonicCapture";
    case ErrorCode::kStorageFailure: return "StorageFailure";
    case ErrorCode::kNotARepository: return "NotARepository";
    case ErrorCode::kNoRemoteConfigured: return "NoRemoteConfigured";
    case ErrorCode::kIdenticalCommits: return "IdenticalCommits";
    case ErrorCode::kToolchainFailure: return "ToolchainFailure";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace historian
