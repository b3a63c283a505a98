// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-written matchers for the published pre-tokenization regexes. Each
// matcher walks the alternatives in pattern order and returns the length of
// the first one that matches, which is what a backtracking regex engine
// would do. Character classes come from ICU: \p{L} and \p{N} are general
// category masks, \s is the White_Space property.

#include <unicode/uchar.h>

#include <cstdint>

#include "lopc/tokenizer.hpp"
#include "lopc/utf8.hpp"

namespace lopc {
namespace {

constexpr std::string_view kCl100kPattern =
    R"('(?i:[sdmt]|ll|ve|re)|[^\r\n\p{L}\p{N}]?+\p{L}++|\p{N}{1,3}+| ?[^\s\p{L}\p{N}]++[\r\n]*+|\s++$|\s*[\r\n]|\s+(?!\S)|\s)";

constexpr std::string_view kGpt2Pattern =
    R"('s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+)";

enum class Cls : std::uint8_t { letter, number, newline, space, other };

struct Text {
  std::vector<char32_t> cp;
  std::vector<Cls> cls;
  std::vector<std::size_t> offset;  // byte offset of each scalar, plus end

  std::size_t size() const { return cp.size(); }
  bool is(std::size_t i, Cls c) const { return i < cls.size() && cls[i] == c; }
  bool is_space(std::size_t i) const {
    return i < cls.size() && (cls[i] == Cls::space || cls[i] == Cls::newline);
  }
  // [^\s\p{L}\p{N}]
  bool is_other(std::size_t i) const { return is(i, Cls::other); }
  std::size_t run(std::size_t i, Cls c) const {
    while (i < size() && cls[i] == c) ++i;
    return i;
  }
  std::size_t space_run(std::size_t i) const {
    while (is_space(i)) ++i;
    return i;
  }
};

Cls classify(char32_t c) {
  if (c == U'\r' || c == U'\n') return Cls::newline;
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  if (mask & U_GC_L_MASK) return Cls::letter;
  if (mask & U_GC_N_MASK) return Cls::number;
  if (u_isUWhiteSpace(static_cast<UChar32>(c))) return Cls::space;
  return Cls::other;
}

Text analyze(std::string_view bytes) {
  Text t;
  t.cp = utf8::decode(bytes);
  t.cls.reserve(t.cp.size());
  t.offset.reserve(t.cp.size() + 1);
  std::size_t off = 0;
  for (char32_t c : t.cp) {
    t.cls.push_back(classify(c));
    t.offset.push_back(off);
    off += c < 0x80 ? 1 : c < 0x800 ? 2 : c < 0x10000 ? 3 : 4;
  }
  t.offset.push_back(off);
  return t;
}

// Simple case folding restricted to the letters the contraction alternatives
// use; U+017F LATIN SMALL LETTER LONG S folds to 's'.
char32_t fold(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c == 0x017F) return U's';
  return c;
}

std::size_t match_cl100k(const Text& t, std::size_t i) {
  const std::size_t n = t.size();

  // '(?i:[sdmt]|ll|ve|re)
  if (t.cp[i] == U'\'' && i + 1 < n) {
    const char32_t a = fold(t.cp[i + 1]);
    if (a == U's' || a == U'd' || a == U'm' || a == U't') return 2;
    if (i + 2 < n) {
      const char32_t b = fold(t.cp[i + 2]);
      if ((a == U'l' && b == U'l') || (a == U'v' && b == U'e') || (a == U'r' && b == U'e')) {
        return 3;
      }
    }
  }

  // [^\r\n\p{L}\p{N}]?+\p{L}++
  if (t.is(i, Cls::letter)) return t.run(i, Cls::letter) - i;
  if (!t.is(i, Cls::number) && !t.is(i, Cls::newline) && t.is(i + 1, Cls::letter)) {
    return t.run(i + 1, Cls::letter) - i;
  }

  // \p{N}{1,3}+
  if (t.is(i, Cls::number)) {
    std::size_t j = i;
    while (j < n && j - i < 3 && t.is(j, Cls::number)) ++j;
    return j - i;
  }

  //  ?[^\s\p{L}\p{N}]++[\r\n]*+
  {
    std::size_t k = i;
    if (t.cp[k] == U' ' && t.is_other(k + 1)) ++k;
    if (t.is_other(k)) {
      std::size_t j = t.run(k, Cls::other);
      j = t.run(j, Cls::newline);
      return j - i;
    }
  }

  // Whitespace from here on.
  const std::size_t end = t.space_run(i);
  // \s++$
  if (end == n) return n - i;
  // \s*[\r\n]
  for (std::size_t j = end; j > i; --j) {
    if (t.is(j - 1, Cls::newline)) return j - i;
  }
  // \s+(?!\S)
  if (end - i >= 2) return end - 1 - i;
  // \s
  return 1;
}

std::size_t match_gpt2(const Text& t, std::size_t i) {
  const std::size_t n = t.size();

  // 's|'t|'re|'ve|'m|'ll|'d
  if (t.cp[i] == U'\'' && i + 1 < n) {
    const char32_t a = t.cp[i + 1];
    if (a == U's' || a == U't' || a == U'm' || a == U'd') return 2;
    if (i + 2 < n) {
      const char32_t b = t.cp[i + 2];
      if ((a == U'r' && b == U'e') || (a == U'v' && b == U'e') || (a == U'l' && b == U'l')) {
        return 3;
      }
    }
  }

  //  ?\p{L}+ |  ?\p{N}+ |  ?[^\s\p{L}\p{N}]+
  const std::size_t k = (t.cp[i] == U' ' && i + 1 < n && !t.is_space(i + 1)) ? i + 1 : i;
  if (!t.is_space(k)) return t.run(k, t.cls[k]) - i;

  const std::size_t end = t.space_run(i);
  // \s+(?!\S)
  if (end == n) return n - i;
  if (end - i >= 2) return end - 1 - i;
  // \s+
  return end - i;
}

}  // namespace

std::optional<SplitRuleInfo> split_rule_for(std::string_view identifier) {
  if (identifier == "cl100k_base") return SplitRuleInfo{SplitRule::cl100k, kCl100kPattern};
  if (identifier == "r50k_base" || identifier == "p50k_base") {
    return SplitRuleInfo{SplitRule::gpt2, kGpt2Pattern};
  }
  return std::nullopt;
}

std::vector<std::string_view> split_pieces(SplitRule rule, std::string_view text) {
  std::vector<std::string_view> pieces;
  if (text.empty()) return pieces;
  const Text t = analyze(text);
  auto match = rule == SplitRule::cl100k ? match_cl100k : match_gpt2;
  for (std::size_t i = 0; i < t.size();) {
    const std::size_t len = match(t, i);
    pieces.push_back(text.substr(t.offset[i], t.offset[i + len] - t.offset[i]));
    i += len;
  }
  return pieces;
}

}  // namespace lopc
