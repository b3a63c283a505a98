// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lopc {

using TokenId = std::uint32_t;
using TokenSequence = std::vector<TokenId>;

/// Pre-tokenization rule bundled with a tokenizer identifier.
enum class SplitRule {
  cl100k,  // cl100k_base
  gpt2,    // r50k_base, p50k_base
};

struct SplitRuleInfo {
  SplitRule rule;
  std::string_view pattern;
};

/// Looks up the segmentation rule on record for a tokenizer identifier.
std::optional<SplitRuleInfo> split_rule_for(std::string_view identifier);

/// Splits text into pre-tokenization pieces. Pieces are contiguous, non-empty
/// and concatenate back to the input. Input must be valid UTF-8.
std::vector<std::string_view> split_pieces(SplitRule rule, std::string_view text);

/// An immutable byte-level BPE vocabulary loaded from a rank file.
///
/// Rank file: one entry per LF-terminated line, `base64(token-bytes) SP rank`,
/// with ranks dense from zero. Special tokens are not part of the file and are
/// never produced by encode(); marker strings in the input are plain text.
class TokenizerSpec {
 public:
  static TokenizerSpec load(std::string identifier, std::istream& rank_source);
  static TokenizerSpec load_file(std::string identifier,
                                 const std::filesystem::path& rank_file);

  TokenizerSpec(TokenizerSpec&&) noexcept;
  TokenizerSpec& operator=(TokenizerSpec&&) noexcept;
  ~TokenizerSpec();

  const std::string& identifier() const noexcept;
  std::size_t vocab_size() const noexcept;
  std::string_view pretokenize_pattern() const noexcept;

  std::optional<TokenId> rank_of(std::string_view token_bytes) const;
  std::string_view token_bytes(TokenId id) const;

  /// Text must be valid UTF-8 (Errc::invalid_sequence otherwise).
  TokenSequence encode(std::string_view text) const;

  /// Errc::unknown_token for an id >= vocab_size, Errc::invalid_sequence when
  /// the concatenated bytes are not valid UTF-8.
  std::string decode(std::span<const TokenId> tokens) const;

  /// Raw BPE over one piece, without pre-tokenization.
  void encode_piece(std::string_view piece, TokenSequence& out) const;

 private:
  struct Impl;
  explicit TokenizerSpec(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

inline TokenizerSpec load_tokenizer(std::string identifier, std::istream& rank_source) {
  return TokenizerSpec::load(std::move(identifier), rank_source);
}

inline TokenSequence encode(const TokenizerSpec& spec, std::string_view text) {
  return spec.encode(text);
}

inline std::string decode(const TokenizerSpec& spec, std::span<const TokenId> tokens) {
  return spec.decode(tokens);
}

}  // namespace lopc
