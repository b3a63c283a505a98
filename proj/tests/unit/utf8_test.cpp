// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/utf8.hpp"

#include <gtest/gtest.h>

#include "lopc/error.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

TEST(Utf8, AcceptsWellFormedText) {
  EXPECT_TRUE(utf8::is_valid(""));
  EXPECT_TRUE(utf8::is_valid("plain ascii"));
  EXPECT_TRUE(utf8::is_valid("é 中 😀 \xF4\x8F\xBF\xBF"));
}

TEST(Utf8, RejectsMalformedSequences) {
  EXPECT_FALSE(utf8::is_valid("\x80"));              // lone continuation
  EXPECT_FALSE(utf8::is_valid("\xC0\xAF"));          // overlong '/'
  EXPECT_FALSE(utf8::is_valid("\xE0\x80\xAF"));      // overlong
  EXPECT_FALSE(utf8::is_valid("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(utf8::is_valid("\xF4\x90\x80\x80"));  // > U+10FFFF
  EXPECT_FALSE(utf8::is_valid("\xE4\xB8"));          // truncated
  EXPECT_FALSE(utf8::is_valid("\xFF"));
}

TEST(Utf8, RequireValidReportsOffset) {
  try {
    utf8::require_valid("ab\xFF");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_sequence);
    EXPECT_NE(std::string(e.what()).find("offset 2"), std::string::npos);
  }
}

TEST(Utf8, DecodeAppendRoundtrip) {
  testing::Rng rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    std::u32string scalars;
    std::string encoded;
    const std::size_t n = rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      char32_t c;
      do {
        c = static_cast<char32_t>(rng.below(0x110000));
      } while (c >= 0xD800 && c <= 0xDFFF);
      scalars.push_back(c);
      utf8::append(encoded, c);
    }
    ASSERT_TRUE(utf8::is_valid(encoded));
    const auto decoded = utf8::decode(encoded);
    EXPECT_EQ(std::u32string(decoded.begin(), decoded.end()), scalars);
    EXPECT_EQ(utf8::count_scalars(encoded), n);
  }
}

}  // namespace
}  // namespace lopc
