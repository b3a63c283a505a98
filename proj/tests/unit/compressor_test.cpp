// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/compressor.hpp"

#include <gtest/gtest.h>

#include "lopc/error.hpp"
#include "lopc/integrity.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

using testing::cl100k;

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io;
}

TEST(Method, NamesAndCodes) {
  EXPECT_EQ(static_cast<int>(Method::zstd), 0);
  EXPECT_EQ(static_cast<int>(Method::token), 1);
  EXPECT_EQ(static_cast<int>(Method::hybrid), 2);
  for (Method m : kAllMethods) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_FALSE(parse_method("brotli"));
}

TEST(Compress, EmptyTextAllMethods) {
  const auto* spec = cl100k().get();
  for (Method m : kAllMethods) {
    const auto p = compress("", m, spec);
    EXPECT_EQ(decompress(p, spec), "");
  }
  EXPECT_EQ(compress("", Method::token, spec).bytes, Bytes{0x00});
}

TEST(Compress, PayloadShapes) {
  const auto* spec = cl100k().get();
  const std::string text = "hello world";
  const auto zstd = compress(text, Method::zstd, spec);
  EXPECT_EQ(as_chars(byte_decompress(zstd.bytes)), text);
  const auto token = compress(text, Method::token, spec);
  EXPECT_EQ(token.bytes, pack_tokens(spec->encode(text)));
  const auto hybrid = compress(text, Method::hybrid, spec);
  EXPECT_EQ(byte_decompress(hybrid.bytes), token.bytes);
}

TEST(Compress, MissingSpec) {
  EXPECT_EQ(error_of([] { compress("x", Method::token, nullptr); }), Errc::configuration);
  EXPECT_EQ(error_of([] { compress("x", Method::hybrid, nullptr); }), Errc::configuration);
  const auto z = compress("plain zstd needs no vocabulary", Method::zstd, nullptr);
  EXPECT_EQ(decompress(z, nullptr), "plain zstd needs no vocabulary");
  const auto h = compress("x", Method::hybrid, cl100k().get());
  EXPECT_EQ(error_of([&] { decompress(h, nullptr); }), Errc::tokenizer_mismatch);
}

TEST(Compress, InvalidInputs) {
  EXPECT_EQ(error_of([] { compress("x", Method::zstd, nullptr, {0}); }), Errc::configuration);
  EXPECT_EQ(error_of([] { compress("\xC3(", Method::zstd, nullptr); }), Errc::invalid_sequence);
  const auto h = compress("some text", Method::hybrid, cl100k().get());
  CompressedPayload bad = h;
  bad.bytes.back() ^= 0x01;
  EXPECT_EQ(error_of([&] { decompress(bad, cl100k().get()); }), Errc::codec);
  const CompressedPayload bad_pack{Method::token, Bytes{0x07, 0, 0}};
  EXPECT_EQ(error_of([&] { decompress(bad_pack, cl100k().get()); }), Errc::format);
}

TEST(Compress, HybridWideFormatByte) {
  // " Conveyor" is the highest-ranked token in the vocabulary.
  const auto* spec = cl100k().get();
  const std::string text = "Belt Conveyor and Conveyor";
  const auto ids = spec->encode(text);
  ASSERT_TRUE(std::any_of(ids.begin(), ids.end(), [](TokenId id) { return id > 65535; }));
  const auto h = compress(text, Method::hybrid, spec);
  const Bytes inner = byte_decompress(h.bytes);
  ASSERT_EQ(inner.at(0), 0x01);
  EXPECT_EQ(unpack_tokens(inner), ids);
  EXPECT_EQ(decompress(h, spec), text);
}

TEST(Compress, MarkdownPromptHybridRatio) {
  const std::string text = testing::make_prompt(testing::PromptKind::markdown, 30000, 77);
  const auto h = compress(text, Method::hybrid, cl100k().get(), {15});
  EXPECT_LE(static_cast<double>(h.bytes.size()), static_cast<double>(text.size()) / 1.2);
}

TEST(Compress, Deterministic) {
  const std::string text = testing::make_prompt(testing::PromptKind::json, 8000, 4);
  for (Method m : kAllMethods) {
    EXPECT_EQ(compress(text, m, cl100k().get()), compress(text, m, cl100k().get()));
  }
}

TEST(Compress, LosslessOverGeneratedPrompts) {
  const auto* spec = cl100k().get();
  for (int kind = 0; kind < testing::kPromptKinds; ++kind) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::string text = testing::make_prompt(static_cast<testing::PromptKind>(kind),
                                                    1 + seed * 997, seed + 40);
      for (Method m : kAllMethods) {
        const std::string back = decompress(compress(text, m, spec), spec);
        const auto report = verify_roundtrip(text, back);
        ASSERT_TRUE(report.ok()) << to_string(m) << " kind " << kind << " seed " << seed;
      }
    }
  }
}

TEST(Compress, HybridInnerStageMatchesEncode) {
  const auto* spec = cl100k().get();
  for (int kind = 0; kind < testing::kPromptKinds; ++kind) {
    const std::string text =
        testing::make_prompt(static_cast<testing::PromptKind>(kind), 3000, kind);
    const Bytes inner = byte_decompress(compress(text, Method::hybrid, spec).bytes);
    EXPECT_EQ(unpack_tokens(inner), spec->encode(text));
  }
}

TEST(Envelope, GoldenHeaders) {
  const auto* spec = cl100k().get();
  const Bytes hybrid = seal_envelope(compress("hi", Method::hybrid, spec), "cl100k_base");
  const Bytes hybrid_head = {0x4C, 0x4F, 0x50, 0x43, 0x01, 0x02, 0x0B};
  ASSERT_GE(hybrid.size(), 7u + 11u);
  EXPECT_TRUE(std::equal(hybrid_head.begin(), hybrid_head.end(), hybrid.begin()));
  EXPECT_EQ(std::string(hybrid.begin() + 7, hybrid.begin() + 18), "cl100k_base");

  const auto z = compress("hi", Method::zstd, nullptr);
  const Bytes zstd = seal_envelope(z, "");
  Bytes expected = {0x4C, 0x4F, 0x50, 0x43, 0x01, 0x00, 0x00};
  expected.insert(expected.end(), z.bytes.begin(), z.bytes.end());
  EXPECT_EQ(zstd, expected);
}

TEST(Envelope, SealRules) {
  const auto t = compress("hi", Method::token, cl100k().get());
  EXPECT_EQ(error_of([&] { seal_envelope(t, std::string(300, 'x')); }), Errc::configuration);
  EXPECT_EQ(error_of([&] { seal_envelope(t, ""); }), Errc::configuration);
  const auto z = compress("hi", Method::zstd, nullptr);
  EXPECT_EQ(error_of([&] { seal_envelope(z, "cl100k_base"); }), Errc::configuration);
  EXPECT_NO_THROW(seal_envelope(t, std::string(255, 'x')));
}

TEST(Envelope, OpenRoundtrip) {
  const auto* spec = cl100k().get();
  for (Method m : kAllMethods) {
    const auto p = compress("roundtrip me", m, spec);
    const std::string id = m == Method::zstd ? "" : "cl100k_base";
    const auto opened = open_envelope(seal_envelope(p, id));
    EXPECT_EQ(opened.payload, p);
    EXPECT_EQ(opened.tokenizer_id, id);
  }
}

TEST(Envelope, OpenErrors) {
  const Bytes good = seal_envelope(compress("hi", Method::hybrid, cl100k().get()), "cl100k_base");
  Bytes lopx = good;
  lopx[3] = 'X';
  EXPECT_EQ(error_of([&] { open_envelope(lopx); }), Errc::not_an_envelope);
  Bytes v2 = good;
  v2[4] = 0x02;
  EXPECT_EQ(error_of([&] { open_envelope(v2); }), Errc::version);
  Bytes m3 = good;
  m3[5] = 0x03;
  EXPECT_EQ(error_of([&] { open_envelope(m3); }), Errc::format);
  EXPECT_EQ(error_of([&] { open_envelope(std::span(good).first(12)); }), Errc::truncated_payload);
  EXPECT_EQ(error_of([&] { open_envelope(std::span(good).first(4)); }), Errc::not_an_envelope);
  Bytes zstd_with_id = good;
  zstd_with_id[5] = 0x00;
  EXPECT_EQ(error_of([&] { open_envelope(zstd_with_id); }), Errc::format);
}

TEST(Engine, CrossInstanceRoundtrip) {
  const PromptCompressor a(cl100k());
  const PromptCompressor b(std::make_shared<const TokenizerSpec>(
      TokenizerSpec::load_file("cl100k_base", testing::rank_file_path())));
  const std::string text = testing::make_prompt(testing::PromptKind::emoji, 4000, 8);
  for (Method m : kAllMethods) {
    EXPECT_EQ(b.decompress_sealed(a.compress_sealed(text, m)), text);
  }
}

TEST(Engine, RejectsForeignTokenizer) {
  std::istringstream vocab;
  std::string bytes;
  for (int b = 0; b < 256; ++b) {
    static const char* kAlphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    const unsigned v = static_cast<unsigned>(b) << 16;
    bytes += kAlphabet[(v >> 18) & 63];
    bytes += kAlphabet[(v >> 12) & 63];
    bytes += "== " + std::to_string(b) + "\n";
  }
  vocab.str(bytes);
  const PromptCompressor other(
      std::make_shared<const TokenizerSpec>(TokenizerSpec::load("r50k_base", vocab)));
  const PromptCompressor engine(cl100k());
  const Bytes env = engine.compress_sealed("mismatch", Method::hybrid);
  EXPECT_EQ(error_of([&] { other.decompress_sealed(env); }), Errc::tokenizer_mismatch);
  // zstd envelopes carry no tokenizer and open anywhere.
  EXPECT_EQ(other.decompress_sealed(engine.compress_sealed("free", Method::zstd)), "free");
}

}  // namespace
}  // namespace lopc
