// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace lopc {

// Sizes are UTF-8 byte counts, character counts are Unicode scalar values and
// MB means 10^6 bytes. Every function raises Errc::undefined_metric outside
// its domain instead of returning NaN or infinity.

/// original / compressed.
double compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes);

/// (1 - compressed / original) * 100; negative when the output is larger.
double space_savings(std::uint64_t original_bytes, std::uint64_t compressed_bytes);

/// compressed_bytes * 8 / char_count.
double bits_per_character(std::uint64_t compressed_bytes, std::uint64_t char_count);

/// (data_bytes / 10^6) / seconds.
double throughput_mb_s(std::uint64_t data_bytes, double seconds);

struct PromptMetrics {
  std::uint64_t original_bytes = 0;
  std::uint64_t original_chars = 0;
  std::uint64_t compressed_bytes = 0;
  double compression_ratio = 0;
  double space_savings_pct = 0;
  double bits_per_char = 0;
  double compress_seconds = 0;
  double decompress_seconds = 0;
  double compress_mb_per_s = 0;
  double decompress_mb_per_s = 0;
  std::optional<std::uint64_t> peak_alloc_bytes;
};

/// Fills every derived field. Throughput is computed over the original size
/// in both directions; a zero duration (below clock resolution) is clamped to
/// one nanosecond.
PromptMetrics measure(std::uint64_t original_bytes, std::uint64_t original_chars,
                      std::uint64_t compressed_bytes, double compress_seconds,
                      double decompress_seconds);

struct EntropyReport {
  double entropy_bits_per_char = 0;
  double s_min_bytes = 0;
  /// +infinity for a single-symbol text.
  double cr_theoretical = 0;
  std::optional<double> efficiency_pct;
  std::uint64_t char_count = 0;
  std::uint64_t distinct_chars = 0;
};

/// Unigram entropy over Unicode scalar frequencies.
EntropyReport shannon_entropy(std::string_view text);

/// cr_actual / cr_theoretical * 100. May exceed 100.
double efficiency(double cr_actual, double cr_theoretical);

inline constexpr std::array<int, 7> kPercentiles = {10, 25, 50, 75, 90, 95, 99};

struct SummaryStats {
  double mean = 0;
  double std = 0;  // sample (n - 1); 0 when n == 1
  double min = 0;
  double max = 0;
  std::array<double, kPercentiles.size()> percentiles{};

  double percentile(int p) const;
};

/// Linear interpolation between order statistics at rank p/100 * (n - 1).
SummaryStats summarize(std::span<const double> values);

}  // namespace lopc
