// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/tokenizer.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_map>

#include "lopc/detail/bpe_merge.hpp"
#include "lopc/error.hpp"
#include "lopc/utf8.hpp"

namespace lopc {
namespace {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

// Pieces at least this long use the heap-based merge.
constexpr std::size_t kHeapMergeThreshold = 128;

std::string parse_error(std::size_t line, const std::string& what) {
  return "rank file line " + std::to_string(line) + ": " + what;
}

bool decode_base64(std::string_view in, std::string& out) {
  if (in.empty() || in.size() % 4 != 0) return false;
  for (char c : in) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '+' || c == '/' || c == '=';
    if (!ok) return false;
  }
  const std::size_t pad = in.ends_with("==") ? 2 : in.ends_with('=') ? 1 : 0;
  if (in.substr(0, in.size() - pad).find('=') != std::string_view::npos) return false;
  out.resize(in.size() / 4 * 3);
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(in.data()),
                                static_cast<int>(in.size()));
  if (n < 0) return false;
  out.resize(static_cast<std::size_t>(n) - pad);
  return true;
}

}  // namespace

struct TokenizerSpec::Impl {
  std::string identifier;
  SplitRuleInfo split;
  std::unordered_map<std::string, TokenId, StringHash, std::equal_to<>> ranks;
  std::vector<std::string> bytes_by_id;

  std::optional<TokenId> lookup(std::string_view b) const {
    auto it = ranks.find(b);
    if (it == ranks.end()) return std::nullopt;
    return it->second;
  }
};

TokenizerSpec::TokenizerSpec(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
TokenizerSpec::TokenizerSpec(TokenizerSpec&&) noexcept = default;
TokenizerSpec& TokenizerSpec::operator=(TokenizerSpec&&) noexcept = default;
TokenizerSpec::~TokenizerSpec() = default;

TokenizerSpec TokenizerSpec::load(std::string identifier, std::istream& rank_source) {
  auto split = split_rule_for(identifier);
  if (!split) {
    throw Error(Errc::unsupported_tokenizer,
                "no pre-tokenization pattern on record for '" + identifier + "'");
  }
  auto impl = std::make_unique<Impl>();
  impl->identifier = std::move(identifier);
  impl->split = *split;

  std::vector<std::pair<TokenId, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(rank_source, line)) {
    ++line_no;
    const auto sp = line.find(' ');
    if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos) {
      throw Error(Errc::parse, parse_error(line_no, "expected '<base64> <rank>'"));
    }
    std::string token;
    if (!decode_base64(std::string_view(line).substr(0, sp), token)) {
      throw Error(Errc::parse, parse_error(line_no, "invalid base64 token"));
    }
    const std::string_view digits = std::string_view(line).substr(sp + 1);
    TokenId rank = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
      throw Error(Errc::parse, parse_error(line_no, "invalid rank"));
    }
    entries.emplace_back(rank, std::move(token));
  }
  if (rank_source.bad()) throw Error(Errc::io, "failed reading rank file");
  if (entries.empty()) throw Error(Errc::parse, "rank file is empty");

  const std::size_t vocab = entries.size();
  impl->bytes_by_id.resize(vocab);
  std::vector<bool> seen(vocab, false);
  impl->ranks.reserve(vocab);
  for (auto& [rank, token] : entries) {
    if (rank >= vocab) {
      throw Error(Errc::format, "rank " + std::to_string(rank) +
                                    " out of range; ranks must be dense from 0");
    }
    if (seen[rank]) throw Error(Errc::format, "duplicate rank " + std::to_string(rank));
    seen[rank] = true;
    if (!impl->ranks.emplace(token, rank).second) {
      throw Error(Errc::format, "duplicate token bytes at rank " + std::to_string(rank));
    }
    impl->bytes_by_id[rank] = std::move(token);
  }
  for (int b = 0; b < 256; ++b) {
    if (!impl->lookup(std::string(1, static_cast<char>(b)))) {
      throw Error(Errc::format, "vocabulary lacks single-byte token " + std::to_string(b));
    }
  }
  return TokenizerSpec(std::move(impl));
}

TokenizerSpec TokenizerSpec::load_file(std::string identifier,
                                       const std::filesystem::path& rank_file) {
  std::ifstream in(rank_file, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open rank file " + rank_file.string());
  return load(std::move(identifier), in);
}

const std::string& TokenizerSpec::identifier() const noexcept { return impl_->identifier; }

std::size_t TokenizerSpec::vocab_size() const noexcept { return impl_->bytes_by_id.size(); }

std::string_view TokenizerSpec::pretokenize_pattern() const noexcept {
  return impl_->split.pattern;
}

std::optional<TokenId> TokenizerSpec::rank_of(std::string_view token_bytes) const {
  return impl_->lookup(token_bytes);
}

std::string_view TokenizerSpec::token_bytes(TokenId id) const {
  if (id >= impl_->bytes_by_id.size()) {
    throw Error(Errc::unknown_token, "token id " + std::to_string(id) + " >= vocab size " +
                                         std::to_string(impl_->bytes_by_id.size()));
  }
  return impl_->bytes_by_id[id];
}

void TokenizerSpec::encode_piece(std::string_view piece, TokenSequence& out) const {
  if (piece.empty()) return;
  if (auto whole = impl_->lookup(piece)) {
    out.push_back(*whole);
    return;
  }
  auto lookup = [this](std::string_view b) { return impl_->lookup(b); };
  if (piece.size() < kHeapMergeThreshold) {
    detail::bpe_merge_scan(piece, lookup, out);
  } else {
    detail::bpe_merge_heap(piece, lookup, out);
  }
}

TokenSequence TokenizerSpec::encode(std::string_view text) const {
  TokenSequence out;
  out.reserve(text.size() / 3 + 1);
  for (std::string_view piece : split_pieces(impl_->split.rule, text)) {
    encode_piece(piece, out);
  }
  return out;
}

std::string TokenizerSpec::decode(std::span<const TokenId> tokens) const {
  std::string out;
  for (TokenId id : tokens) out.append(token_bytes(id));
  utf8::require_valid(out);
  return out;
}

}  // namespace lopc
