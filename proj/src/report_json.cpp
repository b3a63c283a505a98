// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/report_json.hpp"

#include <cmath>
#include <string>

namespace lopc {

using nlohmann::json;

json to_json(const SummaryStats& s) {
  json pct = json::object();
  for (std::size_t i = 0; i < kPercentiles.size(); ++i) {
    pct[std::to_string(kPercentiles[i])] = s.percentiles[i];
  }
  return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}, {"percentiles", pct}};
}

json to_json(const PromptMetrics& m) {
  return {
      {"original_bytes", m.original_bytes},
      {"original_chars", m.original_chars},
      {"compressed_bytes", m.compressed_bytes},
      {"compression_ratio", m.compression_ratio},
      {"space_savings_pct", m.space_savings_pct},
      {"bits_per_char", m.bits_per_char},
      {"compress_seconds", m.compress_seconds},
      {"decompress_seconds", m.decompress_seconds},
      {"compress_mb_per_s", m.compress_mb_per_s},
      {"decompress_mb_per_s", m.decompress_mb_per_s},
      {"peak_alloc_bytes", m.peak_alloc_bytes ? json(*m.peak_alloc_bytes) : json(nullptr)},
  };
}

json to_json(const VerificationReport& v) {
  return {
      {"exact_match", v.exact_match},
      {"original_sha256", to_hex(v.original_sha256)},
      {"reconstructed_sha256", to_hex(v.reconstructed_sha256)},
      {"hash_match", v.hash_match},
      {"reconstruction_error_rate", v.reconstruction_error_rate},
      {"anomaly", v.anomaly()},
  };
}

json to_json(const EntropyReport& e) {
  const bool infinite = std::isinf(e.cr_theoretical);
  return {
      {"entropy_bits_per_char", e.entropy_bits_per_char},
      {"char_count", e.char_count},
      {"distinct_chars", e.distinct_chars},
      {"s_min_bytes", e.s_min_bytes},
      {"cr_theoretical", infinite ? json(nullptr) : json(e.cr_theoretical)},
      {"cr_theoretical_infinite", infinite},
      {"efficiency_pct", e.efficiency_pct ? json(*e.efficiency_pct) : json(nullptr)},
  };
}

json to_json(const BenchmarkReport& r) {
  json aggregates = json::object();
  for (const auto& [method, a] : r.aggregates) {
    aggregates[std::string(to_string(method))] = {
        {"compression_ratio", to_json(a.compression_ratio)},
        {"space_savings_pct", to_json(a.space_savings_pct)},
        {"bits_per_char", to_json(a.bits_per_char)},
        {"compress_mb_per_s", to_json(a.compress_mb_per_s)},
        {"decompress_mb_per_s", to_json(a.decompress_mb_per_s)},
    };
  }
  json rows = json::array();
  for (const auto& rec : r.per_prompt) {
    rows.push_back({{"prompt_id", rec.prompt_id},
                    {"method", std::string(to_string(rec.method))},
                    {"metrics", to_json(rec.metrics)},
                    {"verification", to_json(rec.verification)}});
  }
  return {
      {"run_config",
       {{"tokenizer_id", r.run_config.tokenizer_id},
        {"zstd_level", r.run_config.zstd_level},
        {"corpus", r.run_config.corpus},
        {"timestamp", r.run_config.timestamp},
        {"units", {{"mb", "1e6 bytes"}, {"chars", "unicode scalar values"}}}}},
      {"aggregates", aggregates},
      {"failure_count", r.failure_count},
      {"per_prompt", rows},
  };
}

}  // namespace lopc
