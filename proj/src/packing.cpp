// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/packing.hpp"

#include <algorithm>
#include <string>

#include "lopc/error.hpp"

namespace lopc {

PackFormat choose_format(std::span<const TokenId> tokens) noexcept {
  const bool wide = std::any_of(tokens.begin(), tokens.end(),
                                [](TokenId id) { return id > 0xFFFF; });
  return wide ? PackFormat::uint32 : PackFormat::uint16;
}

Bytes pack_tokens(std::span<const TokenId> tokens) {
  const PackFormat format = choose_format(tokens);
  const std::size_t width = format == PackFormat::uint16 ? 2 : 4;
  Bytes out;
  out.reserve(1 + width * tokens.size());
  out.push_back(static_cast<std::uint8_t>(format));
  for (TokenId id : tokens) {
    for (std::size_t b = 0; b < width; ++b) {
      out.push_back(static_cast<std::uint8_t>(id >> (8 * b)));
    }
  }
  return out;
}

TokenSequence unpack_tokens(std::span<const std::uint8_t> packed) {
  if (packed.empty()) throw Error(Errc::truncated_payload, "packed tokens are empty");
  std::size_t width;
  switch (packed[0]) {
    case static_cast<std::uint8_t>(PackFormat::uint16): width = 2; break;
    case static_cast<std::uint8_t>(PackFormat::uint32): width = 4; break;
    default:
      throw Error(Errc::format, "unknown token format byte " + std::to_string(packed[0]));
  }
  const auto body = packed.subspan(1);
  if (body.size() % width != 0) {
    throw Error(Errc::truncated_payload, std::to_string(body.size()) +
                                             " payload bytes is not a multiple of " +
                                             std::to_string(width));
  }
  TokenSequence tokens;
  tokens.reserve(body.size() / width);
  for (std::size_t i = 0; i < body.size(); i += width) {
    TokenId id = 0;
    for (std::size_t b = 0; b < width; ++b) {
      id |= static_cast<TokenId>(body[i + b]) << (8 * b);
    }
    tokens.push_back(id);
  }
  return tokens;
}

}  // namespace lopc
