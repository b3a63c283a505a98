// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/integrity.hpp"

#include <gtest/gtest.h>

namespace lopc {
namespace {

TEST(Sha256, KnownAnswers) {
  EXPECT_EQ(to_hex(sha256("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(to_hex(sha256("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(to_hex(sha256("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  EXPECT_EQ(to_hex(sha256(std::string(1000000, 'a'))),
            "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST(Verify, ExactMatch) {
  const auto r = verify_roundtrip("abc", "abc");
  EXPECT_TRUE(r.exact_match);
  EXPECT_TRUE(r.hash_match);
  EXPECT_EQ(r.reconstruction_error_rate, 0.0);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.anomaly());
  EXPECT_EQ(r.original_sha256, r.reconstructed_sha256);
}

TEST(Verify, EmptyStrings) {
  const auto r = verify_roundtrip("", "");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.reconstruction_error_rate, 0.0);
}

TEST(Verify, OneCharacterChanged) {
  const std::string a(100, 'x');
  std::string b = a;
  b[37] = 'y';
  const auto r = verify_roundtrip(a, b);
  EXPECT_FALSE(r.exact_match);
  EXPECT_FALSE(r.hash_match);
  EXPECT_DOUBLE_EQ(r.reconstruction_error_rate, 0.01);
  EXPECT_FALSE(r.ok());
}

TEST(Verify, RateCountsScalarsNotBytes) {
  // Two characters, one of them three bytes wide, one differs.
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("中a", "中b"), 0.5);
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("中a", "文a"), 0.5);
}

TEST(Verify, LengthMismatch) {
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("abcd", "ab"), 0.5);
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("ab", "abcd"), 0.5);
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(reconstruction_error_rate("abcd", "xbc"), 0.5);
}

TEST(Verify, RateStaysInUnitIntervalAndPositiveOnDifference) {
  const char* samples[] = {"", "a", "ab", "ba", "abc", "\xff", "é", "e\xcc\x81"};
  for (const char* a : samples) {
    for (const char* b : samples) {
      const double r = reconstruction_error_rate(a, b);
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
      EXPECT_EQ(r == 0.0, std::string_view(a) == std::string_view(b)) << a << " vs " << b;
    }
  }
}

}  // namespace
}  // namespace lopc
