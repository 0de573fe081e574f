// Copyright 2026 The Authors.
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
#include <string_view>

namespace tilediv {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfBounds,
  kInvalidTile,
  kInvalidFrequency,
  kDimMismatch,
  kConflictingExactTiles,
  kInfeasibleTile,
  kNoConvergence,
  kConsistencyError,
  kInfiniteDivergence,
  kInfiniteSurprise,
  kNotExact,
  kSizeLimit,
  kParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kInvalidTile: return "InvalidTile";
    case ErrorCode::kInvalidFrequency: return "InvalidFrequency";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kConflictingExactTiles: return "ConflictingExactTiles";
    case ErrorCode::kInfeasibleTile: return "InfeasibleTile";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kConsistencyError: return "ConsistencyError";
    case ErrorCode::kInfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::kInfiniteSurprise: return "InfiniteSurprise";
    case ErrorCode::kNotExact: return "NotExact";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

// Numerical failures are the ones caused by the tile frequencies themselves
// rather than by malformed input.
inline bool is_numerical(ErrorCode code) {
  return code == ErrorCode::kConflictingExactTiles ||
         code == ErrorCode::kInfeasibleTile ||
         code == ErrorCode::kNoConvergence ||
         code == ErrorCode::kConsistencyError ||
         code == ErrorCode::kInfiniteDivergence ||
         code == ErrorCode::kInfiniteSurprise;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> tile_index = std::nullopt)
      : std::runtime_error(format(code, message, tile_index)),
        code_(code),
        tile_index_(tile_index) {}

  ErrorCode code() const noexcept { return code_; }

  // 0-based position of the offending tile within the tile set, if any.
  std::optional<std::size_t> tile_index() const noexcept {
    return tile_index_;
  }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::optional<std::size_t> tile_index) {
    std::string out(to_string(code));
    if (tile_index) out += " (tile #" + std::to_string(*tile_index + 1) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::optional<std::size_t> tile_index_;
};

}  // namespace tilediv
