// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "lopc/packing.hpp"

namespace lopc {

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 22;
inline constexpr int kDefaultLevel = 15;

struct CodecOptions {
  int level = kDefaultLevel;

  /// Errc::configuration unless level is within [1, 22].
  void validate() const;
};

/// Level for a tier alias: "fast" -> 3, "balanced" -> 15, "max" -> 19.
std::optional<int> level_for_tier(std::string_view tier) noexcept;

/// One Zstandard frame with the content size and an XXH64 content checksum.
Bytes byte_compress(std::span<const std::uint8_t> data, const CodecOptions& options = {});

/// Decodes exactly one complete frame. Corrupt, truncated or trailing input
/// raises Errc::codec; partial output is never returned.
Bytes byte_decompress(std::span<const std::uint8_t> frame);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string_view as_chars(std::span<const std::uint8_t> b) noexcept {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

}  // namespace lopc
