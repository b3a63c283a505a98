// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/codec.hpp"

#include <gtest/gtest.h>

#include <thread>

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

Bytes random_bytes(std::size_t n, std::uint64_t seed) {
  testing::Rng rng(seed);
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next());
  return out;
}

TEST(Codec, EmptyInputRoundtrips) {
  const Bytes frame = byte_compress({});
  EXPECT_FALSE(frame.empty());
  EXPECT_TRUE(byte_decompress(frame).empty());
}

TEST(Codec, RepetitiveInputShrinksDrastically) {
  const Bytes data(10000, 'a');
  const Bytes frame = byte_compress(data, {15});
  EXPECT_LT(frame.size(), 100u);
  EXPECT_EQ(byte_decompress(frame), data);
}

TEST(Codec, RandomBlockIsIncompressible) {
  const Bytes data = random_bytes(4096, 1);
  const Bytes frame = byte_compress(data);
  EXPECT_GE(frame.size(), 4096u * 99 / 100);
  EXPECT_EQ(byte_decompress(frame), data);
}

TEST(Codec, RoundtripAcrossLevels) {
  testing::Rng rng(5);
  for (int level : {1, 15, 22}) {
    for (int iter = 0; iter < 20; ++iter) {
      const Bytes data = iter % 2 ? random_bytes(rng.below(5000), rng.next())
                                  : Bytes(rng.below(5000), static_cast<std::uint8_t>(iter));
      ASSERT_EQ(byte_decompress(byte_compress(data, {level})), data) << "level " << level;
    }
    const std::string text = testing::make_prompt(testing::PromptKind::python, 20000, level);
    EXPECT_EQ(as_chars(byte_decompress(byte_compress(as_bytes(text), {level}))), text);
  }
}

TEST(Codec, HigherLevelNotWorseOnRepetitiveText) {
  std::string text;
  while (text.size() < 100 * 1024) text += "The quick brown fox jumps over the lazy dog. 0123 ";
  text.resize(100 * 1024);
  EXPECT_LE(byte_compress(as_bytes(text), {22}).size(), byte_compress(as_bytes(text), {1}).size());
}

TEST(Codec, LevelBounds) {
  EXPECT_EQ(error_of([] { byte_compress({}, {0}); }), Errc::configuration);
  EXPECT_EQ(error_of([] { byte_compress({}, {23}); }), Errc::configuration);
  EXPECT_EQ(error_of([] { CodecOptions{-5}.validate(); }), Errc::configuration);
  EXPECT_NO_THROW(CodecOptions{1}.validate());
  EXPECT_NO_THROW(CodecOptions{22}.validate());
}

TEST(Codec, Tiers) {
  EXPECT_EQ(level_for_tier("fast"), 3);
  EXPECT_EQ(level_for_tier("balanced"), 15);
  EXPECT_EQ(level_for_tier("max"), 19);
  EXPECT_FALSE(level_for_tier("turbo"));
}

TEST(Codec, CorruptionIsDetected) {
  const std::string text = testing::make_prompt(testing::PromptKind::prose, 5000, 2);
  const Bytes frame = byte_compress(as_bytes(text));
  // Every single-byte flip must either fail or, never, return different data.
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Bytes bad = frame;
    bad[i] ^= 0x5A;
    try {
      const Bytes out = byte_decompress(bad);
      ASSERT_EQ(as_chars(out), text) << "flip at " << i;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::codec);
    }
  }
  Bytes bad = frame;
  bad[frame.size() / 2] ^= 0xFF;
  EXPECT_EQ(error_of([&] { byte_decompress(bad); }), Errc::codec);
}

TEST(Codec, MalformedFrames) {
  const Bytes frame = byte_compress(as_bytes("hello hello hello hello"));
  EXPECT_EQ(error_of([] { byte_decompress({}); }), Errc::codec);
  EXPECT_EQ(error_of([&] { byte_decompress(std::span(frame).first(frame.size() - 1)); }),
            Errc::codec);
  EXPECT_EQ(error_of([&] { byte_decompress(std::span(frame).first(6)); }), Errc::codec);
  Bytes trailing = frame;
  trailing.push_back(0);
  EXPECT_EQ(error_of([&] { byte_decompress(trailing); }), Errc::codec);
  Bytes two = frame;
  two.insert(two.end(), frame.begin(), frame.end());
  EXPECT_EQ(error_of([&] { byte_decompress(two); }), Errc::codec);
  EXPECT_EQ(error_of([] { byte_decompress(as_bytes("not a frame at all")); }), Errc::codec);
}

TEST(Codec, ConcurrentCallsAreIndependent) {
  std::vector<std::thread> threads;
  std::atomic<int> failures{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([t, &failures] {
      for (int i = 0; i < 50; ++i) {
        const Bytes data = random_bytes(1000 + static_cast<std::size_t>(i) * 37, t * 100 + i);
        if (byte_decompress(byte_compress(data, {1 + (i % 22)})) != data) ++failures;
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(failures.load(), 0);
}

}  // namespace
}  // namespace lopc
