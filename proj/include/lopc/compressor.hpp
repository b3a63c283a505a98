// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "lopc/codec.hpp"
#include "lopc/packing.hpp"
#include "lopc/tokenizer.hpp"

namespace lopc {

/// Numeric codes are part of the envelope format.
enum class Method : std::uint8_t {
  zstd = 0,
  token = 1,
  hybrid = 2,
};

inline constexpr std::array<Method, 3> kAllMethods = {Method::zstd, Method::token,
                                                      Method::hybrid};

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

constexpr bool needs_tokenizer(Method m) noexcept { return m != Method::zstd; }

/// Raw method output without an envelope:
///   zstd   - frame of the UTF-8 text
///   token  - packed token ids, no further stage
///   hybrid - frame of the packed token ids
struct CompressedPayload {
  Method method = Method::zstd;
  Bytes bytes;

  friend bool operator==(const CompressedPayload&, const CompressedPayload&) = default;
};

/// `spec` may be null for Method::zstd only (Errc::configuration otherwise).
CompressedPayload compress(std::string_view text, Method method, const TokenizerSpec* spec,
                           const CodecOptions& options = {});

/// Inverse of compress(). Errc::tokenizer_mismatch when a tokenizer is
/// required but absent.
std::string decompress(const CompressedPayload& payload, const TokenizerSpec* spec);

// Envelope: "LOPC" | version | method | id length | id bytes | payload.
inline constexpr std::array<std::uint8_t, 4> kEnvelopeMagic = {'L', 'O', 'P', 'C'};
inline constexpr std::uint8_t kEnvelopeVersion = 0x01;
inline constexpr std::size_t kEnvelopeMinSize = 7;

/// `tokenizer_id` must be empty exactly when the method is zstd, and at most
/// 255 bytes (Errc::configuration).
Bytes seal_envelope(const CompressedPayload& payload, std::string_view tokenizer_id);

struct OpenedEnvelope {
  CompressedPayload payload;
  std::string tokenizer_id;
};

OpenedEnvelope open_envelope(std::span<const std::uint8_t> bytes);

/// A tokenizer plus codec settings. Immutable after construction and safe to
/// share across threads.
class PromptCompressor {
 public:
  explicit PromptCompressor(std::shared_ptr<const TokenizerSpec> spec,
                            CodecOptions options = {});

  const TokenizerSpec* tokenizer() const noexcept { return spec_.get(); }
  const CodecOptions& options() const noexcept { return options_; }

  CompressedPayload compress(std::string_view text, Method method) const;
  std::string decompress(const CompressedPayload& payload) const;

  /// compress() then seal with this engine's tokenizer identifier.
  Bytes compress_sealed(std::string_view text, Method method) const;

  /// Opens an envelope and checks its tokenizer identifier against this
  /// engine before decoding (Errc::tokenizer_mismatch on any difference).
  std::string decompress_sealed(std::span<const std::uint8_t> envelope) const;

 private:
  std::shared_ptr<const TokenizerSpec> spec_;
  CodecOptions options_;
};

}  // namespace lopc
