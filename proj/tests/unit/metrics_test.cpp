// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lopc/error.hpp"
#include "lopc/utf8.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

constexpr double kTol = 1e-9;

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io;
}

TEST(Metrics, CompressionRatio) {
  EXPECT_DOUBLE_EQ(compression_ratio(2000, 400), 5.0);
  EXPECT_DOUBLE_EQ(compression_ratio(777, 777), 1.0);
  EXPECT_EQ(error_of([] { compression_ratio(0, 5); }), Errc::undefined_metric);
  EXPECT_EQ(error_of([] { compression_ratio(5, 0); }), Errc::undefined_metric);
}

TEST(Metrics, SpaceSavings) {
  EXPECT_NEAR(space_savings(2'000'000'000, 400'000'000), 80.0, kTol);
  EXPECT_NEAR(space_savings(100, 136), -36.0, kTol);
  EXPECT_DOUBLE_EQ(space_savings(42, 42), 0.0);
  EXPECT_EQ(error_of([] { space_savings(0, 1); }), Errc::undefined_metric);
}

TEST(Metrics, BitsPerCharacter) {
  EXPECT_DOUBLE_EQ(bits_per_character(400, 2000), 1.6);
  EXPECT_DOUBLE_EQ(bits_per_character(123, 123), 8.0);
  EXPECT_DOUBLE_EQ(bits_per_character(1, 4), 2.0);
  EXPECT_EQ(error_of([] { bits_per_character(1, 0); }), Errc::undefined_metric);
}

TEST(Metrics, Throughput) {
  EXPECT_DOUBLE_EQ(throughput_mb_s(1'000'000, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(throughput_mb_s(5'000'000, 0.5), 10.0);
  EXPECT_EQ(error_of([] { throughput_mb_s(1, 0.0); }), Errc::undefined_metric);
  EXPECT_EQ(error_of([] { throughput_mb_s(1, -1.0); }), Errc::undefined_metric);
}

TEST(Metrics, MeasureFillsDerivedFields) {
  const auto m = measure(2000, 1900, 400, 0.002, 0.0);
  EXPECT_DOUBLE_EQ(m.compression_ratio, 5.0);
  EXPECT_NEAR(m.space_savings_pct, 80.0, kTol);
  EXPECT_DOUBLE_EQ(m.bits_per_char, 400.0 * 8 / 1900);
  EXPECT_DOUBLE_EQ(m.compress_mb_per_s, 1.0);
  EXPECT_GT(m.decompress_mb_per_s, 0.0);
  EXPECT_TRUE(std::isfinite(m.decompress_mb_per_s));
  EXPECT_FALSE(m.peak_alloc_bytes.has_value());
}

TEST(Metrics, IdentitiesOnRandomSizes) {
  testing::Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t o = 1 + rng.below(1'000'000);
    const std::uint64_t c = 1 + rng.below(1'000'000);
    const double cr = compression_ratio(o, c);
    const double ss = space_savings(o, c);
    ASSERT_NEAR(ss, (1.0 - 1.0 / cr) * 100.0, kTol * std::max(1.0, std::abs(ss)));
    ASSERT_EQ(cr > 1.0, ss > 0.0);
  }
}

TEST(Entropy, TwoEquiprobableSymbols) {
  const auto r = shannon_entropy("abab");
  EXPECT_NEAR(r.entropy_bits_per_char, 1.0, kTol);
  EXPECT_NEAR(r.s_min_bytes, 0.5, kTol);
  EXPECT_NEAR(r.cr_theoretical, 8.0, kTol);
  EXPECT_EQ(r.char_count, 4u);
  EXPECT_EQ(r.distinct_chars, 2u);
}

TEST(Entropy, SingleSymbol) {
  const auto r = shannon_entropy("aaaa");
  EXPECT_EQ(r.entropy_bits_per_char, 0.0);
  EXPECT_EQ(r.s_min_bytes, 0.0);
  EXPECT_TRUE(std::isinf(r.cr_theoretical));
  EXPECT_EQ(error_of([&] { efficiency(3.0, r.cr_theoretical); }), Errc::undefined_metric);
}

TEST(Entropy, Uniform256) {
  std::string text;
  for (char32_t c = 0x100; c < 0x200; ++c) utf8::append(text, c);
  const auto r = shannon_entropy(text);
  EXPECT_NEAR(r.entropy_bits_per_char, 8.0, kTol);
  EXPECT_NEAR(r.cr_theoretical, 1.0, kTol);
  EXPECT_NEAR(r.s_min_bytes, 256.0, kTol);
}

TEST(Entropy, CountsScalarsNotBytes) {
  const auto r = shannon_entropy("中文中文");
  EXPECT_NEAR(r.entropy_bits_per_char, 1.0, kTol);
  EXPECT_EQ(r.char_count, 4u);
}

TEST(Entropy, BoundedByAlphabet) {
  for (int kind = 0; kind < testing::kPromptKinds; ++kind) {
    const auto text = testing::make_prompt(static_cast<testing::PromptKind>(kind), 5000, kind);
    const auto r = shannon_entropy(text);
    EXPECT_GE(r.entropy_bits_per_char, 0.0);
    EXPECT_LE(r.entropy_bits_per_char, std::log2(static_cast<double>(r.distinct_chars)) + kTol);
    EXPECT_NEAR(r.s_min_bytes, r.entropy_bits_per_char * 5000 / 8, 1e-6);
  }
}

TEST(Entropy, EmptyText) {
  EXPECT_EQ(error_of([] { shannon_entropy(""); }), Errc::undefined_metric);
}

TEST(Efficiency, Values) {
  EXPECT_DOUBLE_EQ(efficiency(4.0, 8.0), 50.0);
  EXPECT_DOUBLE_EQ(efficiency(8.0, 8.0), 100.0);
  EXPECT_GT(efficiency(10.0, 8.0), 100.0);
  EXPECT_EQ(error_of([] { efficiency(0.0, 8.0); }), Errc::undefined_metric);
}

TEST(Summary, FiveValues) {
  const std::vector<double> v = {5, 1, 4, 2, 3};
  const auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.max, 5.0);
  EXPECT_DOUBLE_EQ(s.percentile(50), 3.0);
  EXPECT_NEAR(s.std, std::sqrt(2.5), kTol);
  EXPECT_DOUBLE_EQ(s.percentile(10), 1.4);
  EXPECT_DOUBLE_EQ(s.percentile(25), 2.0);
  EXPECT_DOUBLE_EQ(s.percentile(99), 4.96);
}

TEST(Summary, SingleValue) {
  const std::vector<double> v = {7};
  const auto s = summarize(v);
  EXPECT_EQ(s.mean, 7.0);
  EXPECT_EQ(s.std, 0.0);
  for (int p : kPercentiles) EXPECT_EQ(s.percentile(p), 7.0);
}

TEST(Summary, Errors) {
  EXPECT_EQ(error_of([] { summarize({}); }), Errc::undefined_metric);
  const std::vector<double> v = {1};
  EXPECT_EQ(error_of([&] { summarize(v).percentile(42); }), Errc::undefined_metric);
}

TEST(Summary, OrderingAndPermutationInvariance) {
  testing::Rng rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> v(1 + rng.below(50));
    for (auto& x : v) x = static_cast<double>(rng.below(1'000'000)) / 7.0 - 5000.0;
    const auto s = summarize(v);
    ASSERT_LE(s.min, s.mean);
    ASSERT_LE(s.mean, s.max);
    double prev = s.min;
    for (int p : kPercentiles) {
      ASSERT_LE(prev, s.percentile(p));
      prev = s.percentile(p);
    }
    ASSERT_LE(prev, s.max);
    std::vector<double> shuffled = v;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    const auto t = summarize(shuffled);
    ASSERT_EQ(s.min, t.min);
    ASSERT_EQ(s.max, t.max);
    ASSERT_EQ(s.percentiles, t.percentiles);
    ASSERT_NEAR(s.mean, t.mean, 1e-9 * (1 + std::abs(s.mean)));
    ASSERT_NEAR(s.std, t.std, 1e-9 * (1 + s.std));
  }
}

}  // namespace
}  // namespace lopc
