// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lopc/compressor.hpp"
#include "lopc/integrity.hpp"
#include "lopc/metrics.hpp"

namespace lopc {

struct Prompt {
  std::string id;
  std::string text;
};

struct Corpus {
  std::vector<Prompt> prompts;
  std::string source_descriptor;
  std::size_t skipped_empty = 0;
};

enum class CorpusFormat { jsonl, text_dir };

/// JSONL: one object per line with a string field `field`; ids are the
/// zero-based line numbers. Blank lines are ignored.
/// Text directory: every regular file below `source`, read as UTF-8, ordered
/// and identified by relative path.
/// Empty texts are skipped and counted. Errc::io for unreadable sources,
/// Errc::record for a bad line, Errc::empty_corpus when nothing is left.
Corpus ingest_corpus(const std::filesystem::path& source, CorpusFormat format,
                     const std::string& field = "text");
Corpus ingest_jsonl(std::istream& in, const std::string& field = "text",
                    std::string source_descriptor = "<stream>");

struct PromptRecord {
  std::string prompt_id;
  Method method = Method::zstd;
  PromptMetrics metrics;
  VerificationReport verification;
};

struct MethodAggregates {
  SummaryStats compression_ratio;
  SummaryStats space_savings_pct;
  SummaryStats bits_per_char;
  SummaryStats compress_mb_per_s;
  SummaryStats decompress_mb_per_s;
};

struct RunConfig {
  std::string tokenizer_id;
  int zstd_level = kDefaultLevel;
  std::string corpus;
  std::string timestamp;  // UTC, ISO 8601
};

struct BenchmarkReport {
  RunConfig run_config;
  std::vector<PromptRecord> per_prompt;  // corpus order, then method order
  std::map<Method, MethodAggregates> aggregates;
  std::size_t failure_count = 0;
};

struct BenchOptions {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  unsigned jobs = 1;
};

/// Times compress and decompress for every (prompt, method), verifies the
/// roundtrip and fills metrics. Failed roundtrips, including ones that throw,
/// are recorded and counted; the run always completes.
BenchmarkReport run_benchmark(const Corpus& corpus, const PromptCompressor& engine,
                              const BenchOptions& options = {});

/// Recomputes aggregates from the per-prompt rows.
std::map<Method, MethodAggregates> aggregate(const std::vector<PromptRecord>& records);

enum class ReportFormat { json, csv };

void emit_report(const BenchmarkReport& report, ReportFormat format, std::ostream& out);
void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& destination);

/// CSV cells use this: 6 significant digits, trailing zeros kept.
std::string format_real(double value);

}  // namespace lopc
