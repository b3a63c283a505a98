// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "lopc/error.hpp"
#include "lopc/utf8.hpp"

namespace lopc {

double compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes) {
  if (original_bytes == 0 || compressed_bytes == 0) {
    throw Error(Errc::undefined_metric, "compression ratio needs non-zero sizes");
  }
  return static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
}

double space_savings(std::uint64_t original_bytes, std::uint64_t compressed_bytes) {
  if (original_bytes == 0) {
    throw Error(Errc::undefined_metric, "space savings of an empty original");
  }
  return (1.0 - static_cast<double>(compressed_bytes) / static_cast<double>(original_bytes)) *
         100.0;
}

double bits_per_character(std::uint64_t compressed_bytes, std::uint64_t char_count) {
  if (char_count == 0) throw Error(Errc::undefined_metric, "bits per character of no characters");
  return static_cast<double>(compressed_bytes * 8) / static_cast<double>(char_count);
}

double throughput_mb_s(std::uint64_t data_bytes, double seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds)) {
    throw Error(Errc::undefined_metric, "throughput needs a positive duration");
  }
  return static_cast<double>(data_bytes) / 1e6 / seconds;
}

PromptMetrics measure(std::uint64_t original_bytes, std::uint64_t original_chars,
                      std::uint64_t compressed_bytes, double compress_seconds,
                      double decompress_seconds) {
  constexpr double kClockFloor = 1e-9;
  PromptMetrics m;
  m.original_bytes = original_bytes;
  m.original_chars = original_chars;
  m.compressed_bytes = compressed_bytes;
  m.compression_ratio = compression_ratio(original_bytes, compressed_bytes);
  m.space_savings_pct = space_savings(original_bytes, compressed_bytes);
  m.bits_per_char = bits_per_character(compressed_bytes, original_chars);
  m.compress_seconds = compress_seconds;
  m.decompress_seconds = decompress_seconds;
  m.compress_mb_per_s = throughput_mb_s(original_bytes, std::max(compress_seconds, kClockFloor));
  m.decompress_mb_per_s =
      throughput_mb_s(original_bytes, std::max(decompress_seconds, kClockFloor));
  return m;
}

EntropyReport shannon_entropy(std::string_view text) {
  if (text.empty()) throw Error(Errc::undefined_metric, "entropy of empty text");
  const auto scalars = utf8::decode(text);
  std::unordered_map<char32_t, std::uint64_t> counts;
  for (char32_t c : scalars) ++counts[c];

  const double n = static_cast<double>(scalars.size());
  double h = 0.0;
  for (const auto& [c, k] : counts) {
    const double p = static_cast<double>(k) / n;
    h -= p * std::log2(p);
  }
  // A single symbol gives exactly zero, not a rounding residue.
  if (counts.size() == 1) h = 0.0;

  EntropyReport r;
  r.entropy_bits_per_char = h;
  r.char_count = scalars.size();
  r.distinct_chars = counts.size();
  r.s_min_bytes = h * n / 8.0;
  r.cr_theoretical = h == 0.0 ? std::numeric_limits<double>::infinity() : 8.0 / h;
  return r;
}

double efficiency(double cr_actual, double cr_theoretical) {
  if (!std::isfinite(cr_theoretical)) {
    throw Error(Errc::undefined_metric, "efficiency against an infinite theoretical ratio");
  }
  if (!(cr_actual > 0.0) || !(cr_theoretical > 0.0)) {
    throw Error(Errc::undefined_metric, "efficiency needs positive ratios");
  }
  return cr_actual / cr_theoretical * 100.0;
}

double SummaryStats::percentile(int p) const {
  for (std::size_t i = 0; i < kPercentiles.size(); ++i) {
    if (kPercentiles[i] == p) return percentiles[i];
  }
  throw Error(Errc::undefined_metric, "percentile " + std::to_string(p) + " not tracked");
}

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::undefined_metric, "summary of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  SummaryStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  s.mean = std::clamp(s.mean, s.min, s.max);
  if (n > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  for (std::size_t i = 0; i < kPercentiles.size(); ++i) {
    const double rank = kPercentiles[i] / 100.0 * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    s.percentiles[i] = sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
  }
  return s;
}

}  // namespace lopc
