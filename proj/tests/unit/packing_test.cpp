// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/packing.hpp"

#include <gtest/gtest.h>

#include "lopc/error.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io;
}

TEST(Packing, GoldenUint16) {
  const TokenSequence ids = {0, 1, 65535};
  const Bytes expected = {0x00, 0x00, 0x00, 0x01, 0x00, 0xFF, 0xFF};
  EXPECT_EQ(pack_tokens(ids), expected);
  EXPECT_EQ(unpack_tokens(expected), ids);
}

TEST(Packing, GoldenUint32) {
  const TokenSequence ids = {70000};
  const Bytes expected = {0x01, 0x70, 0x11, 0x01, 0x00};
  EXPECT_EQ(pack_tokens(ids), expected);
  EXPECT_EQ(unpack_tokens(expected), ids);
}

TEST(Packing, EmptySequenceIsSingleFormatByte) {
  EXPECT_EQ(pack_tokens({}), Bytes{0x00});
  EXPECT_TRUE(unpack_tokens(Bytes{0x00}).empty());
  EXPECT_TRUE(unpack_tokens(Bytes{0x01}).empty());
}

TEST(Packing, BoundaryBetweenWidths) {
  EXPECT_EQ(choose_format(TokenSequence{65535}), PackFormat::uint16);
  EXPECT_EQ(choose_format(TokenSequence{65536}), PackFormat::uint32);
  EXPECT_EQ(pack_tokens(TokenSequence{1, 65536}).size(), 9u);
}

TEST(Packing, Errors) {
  EXPECT_EQ(error_of([] { unpack_tokens(Bytes{}); }), Errc::truncated_payload);
  EXPECT_EQ(error_of([] { unpack_tokens(Bytes{0x02, 0x00, 0x00}); }), Errc::format);
  EXPECT_EQ(error_of([] { unpack_tokens(Bytes{0x01, 0x00, 0x00, 0x00}); }),
            Errc::truncated_payload);
  EXPECT_EQ(error_of([] { unpack_tokens(Bytes{0x00, 0x00}); }), Errc::truncated_payload);
}

// Bijectivity, exact size law and minimal width on random sequences.
TEST(Packing, RandomSequencesProperty) {
  testing::Rng rng(2024);
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t n = rng.below(64);
    const bool wide = rng.chance(40);
    TokenSequence ids(n);
    for (auto& id : ids) {
      id = static_cast<TokenId>(wide ? rng.next() : rng.below(65536));
    }
    const Bytes packed = pack_tokens(ids);
    TokenId max_id = 0;
    for (TokenId id : ids) max_id = std::max(max_id, id);
    const std::size_t width = max_id <= 0xFFFF ? 2 : 4;
    ASSERT_EQ(packed.size(), 1 + width * n);
    ASSERT_EQ(packed[0], width == 2 ? 0x00 : 0x01);
    ASSERT_EQ(unpack_tokens(packed), ids);
  }
}

}  // namespace
}  // namespace lopc
