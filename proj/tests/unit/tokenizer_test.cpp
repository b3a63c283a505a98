// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/tokenizer.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lopc/detail/bpe_merge.hpp"
#include "lopc/error.hpp"
#include "lopc/utf8.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

using testing::cl100k;

template <class Fn>
Error expect_error(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(Errc::io, "none");
}

TokenizerSpec load_text(std::string id, const std::string& text) {
  std::istringstream in(text);
  return TokenizerSpec::load(std::move(id), in);
}

// All 256 single bytes at ranks 0..255 in byte order.
std::string byte_vocab() {
  static const char* kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  for (int b = 0; b < 256; ++b) {
    const unsigned v = static_cast<unsigned>(b) << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
    out += " " + std::to_string(b) + "\n";
  }
  return out;
}

TEST(Tokenizer, LoadsCl100k) {
  const auto& spec = *cl100k();
  EXPECT_EQ(spec.identifier(), "cl100k_base");
  EXPECT_EQ(spec.vocab_size(), 100256u);
  EXPECT_EQ(spec.token_bytes(15339), "hello");
  EXPECT_EQ(spec.rank_of(" world"), TokenId{1917});
  EXPECT_FALSE(spec.pretokenize_pattern().empty());
}

TEST(Tokenizer, MatchesReferenceVectors) {
  std::ifstream in(std::string(LOPC_TEST_DATA_DIR) + "/cl100k_vectors.json");
  ASSERT_TRUE(in) << "missing vectors file";
  const auto doc = nlohmann::json::parse(in);
  ASSERT_EQ(doc.at("tokenizer"), "cl100k_base");
  const auto& spec = *cl100k();
  std::size_t checked = 0;
  for (const auto& v : doc.at("vectors")) {
    const std::string text = v.at("text");
    const auto expected = v.at("ids").get<TokenSequence>();
    EXPECT_EQ(spec.encode(text), expected) << "text: " << nlohmann::json(text).dump();
    EXPECT_EQ(spec.decode(expected), text);
    ++checked;
  }
  EXPECT_GE(checked, 250u);
}

TEST(Tokenizer, EmptyText) {
  EXPECT_TRUE(cl100k()->encode("").empty());
  EXPECT_EQ(cl100k()->decode(TokenSequence{}), "");
}

TEST(Tokenizer, SpecialMarkersArePlainText) {
  const auto ids = cl100k()->encode("<|endoftext|>");
  EXPECT_GT(ids.size(), 1u);
  for (TokenId id : ids) EXPECT_LT(id, 100256u);
}

TEST(Tokenizer, RoundtripsGeneratedPrompts) {
  const auto& spec = *cl100k();
  for (int kind = 0; kind < testing::kPromptKinds; ++kind) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const std::string text =
          testing::make_prompt(static_cast<testing::PromptKind>(kind), 50 + seed * 400, seed);
      const auto ids = spec.encode(text);
      ASSERT_EQ(spec.decode(ids), text);
      for (TokenId id : ids) ASSERT_LT(id, spec.vocab_size());
    }
  }
}

TEST(Tokenizer, RoundtripsRandomScalars) {
  const auto& spec = *cl100k();
  testing::Rng rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    const std::size_t n = 1 + rng.below(60);
    for (std::size_t i = 0; i < n; ++i) {
      char32_t c;
      switch (rng.below(4)) {
        case 0: c = static_cast<char32_t>(0x20 + rng.below(0x5F)); break;
        case 1: c = static_cast<char32_t>(rng.below(0x20)); break;
        case 2: c = static_cast<char32_t>(0x80 + rng.below(0x3000)); break;
        default: c = static_cast<char32_t>(0x10000 + rng.below(0x100000)); break;
      }
      if (c >= 0xD800 && c <= 0xDFFF) c = U'x';
      utf8::append(text, c);
    }
    ASSERT_EQ(spec.decode(spec.encode(text)), text);
  }
}

TEST(Tokenizer, DeterministicAcrossLoads) {
  const auto a = TokenizerSpec::load_file("cl100k_base", testing::rank_file_path());
  const std::string text = testing::make_prompt(testing::PromptKind::markdown, 3000, 5);
  EXPECT_EQ(a.encode(text), cl100k()->encode(text));
  EXPECT_EQ(a.encode(text), a.encode(text));
}

// A plain English paragraph of exactly 1,000 characters.
constexpr std::string_view kParagraph =
    "On Tuesday morning the harbour office reopened after three weeks of repairs, and the "
    "queue of fishermen stretched past the bakery by half past seven. Most of them wanted "
    "new permits; a few simply wanted to complain about the weather, which had wrecked two "
    "piers and flooded the old customs shed. The clerk, a patient woman named Idris who had "
    "worked there since 1994, stamped forms with mechanical rhythm while listening to every "
    "grievance. Someone asked whether the northern breakwater would be rebuilt before winter. "
    "She didn't know, she said, but the council had promised an answer by Friday, and she "
    "would post it on the noticeboard beside the door. By noon the crowd had thinned. A boy "
    "delivered sandwiches, gulls fought over crusts on the slipway, and the radio in the back "
    "room crackled with forecasts of yet another storm. Idris glanced at the grey horizon, "
    "sighed, and reached for the next form. Outside, the tide was turning, and the boats "
    "tugged at their ropes as if eager to be off again.";

// 214 tokens according to the independent reference encoder.
TEST(Tokenizer, EnglishParagraphTokenCount) {
  ASSERT_EQ(utf8::count_scalars(kParagraph), 1000u);
  EXPECT_EQ(cl100k()->encode(kParagraph).size(), 214u);
}

// About 3.2 characters per token on documentation mixing prose, markdown
// and code.
TEST(Tokenizer, DocumentationTokenDensity) {
  const std::string text = testing::make_prompt(testing::PromptKind::markdown, 500, 21) +
                           testing::make_prompt(testing::PromptKind::python, 500, 22);
  ASSERT_EQ(utf8::count_scalars(text), 1000u);
  const double tokens = static_cast<double>(cl100k()->encode(text).size());
  const double expected = 1000.0 / 3.2;
  EXPECT_GT(tokens, expected * 0.7);
  EXPECT_LT(tokens, expected * 1.3);
}

TEST(Tokenizer, ConcatenationOfPiecesIsInput) {
  const std::string text = testing::make_prompt(testing::PromptKind::whitespace, 2000, 3) +
                           testing::make_prompt(testing::PromptKind::multilingual, 2000, 3);
  std::string joined;
  for (auto piece : split_pieces(SplitRule::cl100k, text)) {
    ASSERT_FALSE(piece.empty());
    joined += piece;
  }
  EXPECT_EQ(joined, text);
}

TEST(Tokenizer, Gpt2RuleSplitsContractions) {
  const auto pieces = split_pieces(SplitRule::gpt2, "I'm here  now");
  const std::vector<std::string_view> expected = {"I", "'m", " here", " ", " now"};
  EXPECT_EQ(pieces, expected);
}

TEST(Tokenizer, ScanAndHeapMergeAgree) {
  const auto& spec = *cl100k();
  auto lookup = [&](std::string_view b) { return spec.rank_of(b); };
  testing::Rng rng(31337);
  static const std::string_view kUnits[] = {"a", "ab", "the", "=", " ", "ing", "\xe4\xb8\xad", "0"};
  for (int iter = 0; iter < 400; ++iter) {
    std::string piece;
    const std::size_t n = 1 + rng.below(300);
    if (rng.chance(50)) {
      for (std::size_t i = 0; i < n; ++i) piece += static_cast<char>(rng.below(256));
    } else {
      while (piece.size() < n) piece += kUnits[rng.below(std::size(kUnits))];
    }
    TokenSequence scan, heap;
    detail::bpe_merge_scan(piece, lookup, scan);
    detail::bpe_merge_heap(piece, lookup, heap);
    ASSERT_EQ(scan, heap) << "iteration " << iter;
    std::string rebuilt;
    for (TokenId id : scan) rebuilt += spec.token_bytes(id);
    ASSERT_EQ(rebuilt, piece);
  }
}

TEST(Tokenizer, LongRepeatedPieceRoundtrips) {
  const std::string text(200000, 'a');
  const auto ids = cl100k()->encode(text);
  EXPECT_LT(ids.size(), text.size() / 4);
  EXPECT_EQ(cl100k()->decode(ids), text);
}

TEST(Tokenizer, DecodeErrors) {
  const auto& spec = *cl100k();
  EXPECT_EQ(expect_error([&] { spec.decode(TokenSequence{100256}); }).code(),
            Errc::unknown_token);
  EXPECT_EQ(expect_error([&] { spec.token_bytes(4000000000u); }).code(), Errc::unknown_token);
  // Byte 0xE4 alone is the start of a three-byte sequence.
  const auto lead = spec.rank_of("\xe4");
  ASSERT_TRUE(lead);
  EXPECT_EQ(expect_error([&] { spec.decode(TokenSequence{*lead}); }).code(),
            Errc::invalid_sequence);
}

TEST(Tokenizer, EncodeRejectsInvalidUtf8) {
  EXPECT_EQ(expect_error([] { cl100k()->encode("ok\xC3"); }).code(), Errc::invalid_sequence);
}

TEST(TokenizerLoad, SyntheticByteVocabulary) {
  const auto spec = load_text("cl100k_base", byte_vocab() + "YWI= 256\n");
  EXPECT_EQ(spec.vocab_size(), 257u);
  EXPECT_EQ(spec.encode("ab"), TokenSequence{256});
  EXPECT_EQ(spec.encode("abc"), (TokenSequence{256, 'c'}));
}

TEST(TokenizerLoad, EmptyFile) {
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", ""); }).code(), Errc::parse);
}

TEST(TokenizerLoad, MalformedLineReportsLineNumber) {
  const std::string text = byte_vocab() + "not-base64! 256\n";
  const Error e = expect_error([&] { load_text("cl100k_base", text); });
  EXPECT_EQ(e.code(), Errc::parse);
  EXPECT_NE(std::string(e.what()).find("line 257"), std::string::npos) << e.what();
}

TEST(TokenizerLoad, BadRank) {
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", byte_vocab() + "YWI= x\n"); }).code(),
            Errc::parse);
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", byte_vocab() + "YWI=\n"); }).code(),
            Errc::parse);
}

TEST(TokenizerLoad, DuplicateRank) {
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", byte_vocab() + "YWI= 255\n"); }).code(),
            Errc::format);
}

TEST(TokenizerLoad, DuplicateBytes) {
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", byte_vocab() + "YQ== 256\n"); }).code(),
            Errc::format);
}

TEST(TokenizerLoad, SparseRanks) {
  EXPECT_EQ(expect_error([] { load_text("cl100k_base", byte_vocab() + "YWI= 300\n"); }).code(),
            Errc::format);
}

TEST(TokenizerLoad, MissingSingleByte) {
  std::string text = byte_vocab();
  // Replace byte 0x61 ('a') with a two-byte token at the same rank.
  const std::string a_line = "YQ== 97\n";
  text.replace(text.find(a_line), a_line.size(), "YWI= 97\n");
  EXPECT_EQ(expect_error([&] { load_text("cl100k_base", text); }).code(), Errc::format);
}

TEST(TokenizerLoad, UnknownIdentifier) {
  EXPECT_EQ(expect_error([] { load_text("o200k_base", byte_vocab()); }).code(),
            Errc::unsupported_tokenizer);
}

TEST(TokenizerLoad, MissingFile) {
  EXPECT_EQ(expect_error([] { TokenizerSpec::load_file("cl100k_base", "/nonexistent/x"); })
                .code(),
            Errc::io);
}

}  // namespace
}  // namespace lopc
