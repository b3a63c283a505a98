// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lopc/tokenizer.hpp"

namespace lopc {

using Bytes = std::vector<std::uint8_t>;

/// Leading byte of a packed token payload.
enum class PackFormat : std::uint8_t {
  uint16 = 0x00,
  uint32 = 0x01,
};

/// Narrowest width that holds every id; an empty sequence packs as uint16.
PackFormat choose_format(std::span<const TokenId> tokens) noexcept;

/// Format byte followed by each id little-endian at fixed width:
/// exactly 1 + 2n or 1 + 4n bytes.
Bytes pack_tokens(std::span<const TokenId> tokens);

/// Inverse of pack_tokens. Errc::truncated_payload for empty input or a body
/// that is not a multiple of the element width, Errc::format for an unknown
/// format byte.
TokenSequence unpack_tokens(std::span<const std::uint8_t> packed);

}  // namespace lopc
