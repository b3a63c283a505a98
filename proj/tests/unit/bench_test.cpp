// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lopc/error.hpp"
#include "lopc/report_json.hpp"
#include "support/corpus_gen.hpp"

namespace lopc {
namespace {

namespace fs = std::filesystem;

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::io;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("lopc-bench-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, std::string_view data) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << data;
}

const PromptCompressor& engine() {
  static const PromptCompressor e(testing::cl100k());
  return e;
}

Corpus small_corpus() {
  Corpus c;
  c.source_descriptor = "small";
  for (int kind = 0; kind < testing::kPromptKinds; ++kind) {
    c.prompts.push_back({"p" + std::to_string(kind),
                         testing::make_prompt(static_cast<testing::PromptKind>(kind),
                                              200 + kind * 300, kind)});
  }
  return c;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

TEST(Ingest, JsonlIdsAreLineNumbers) {
  std::istringstream in("{\"text\": \"a\"}\n{\"text\": \"b\"}\n{\"text\": \"c\"}\n");
  const Corpus c = ingest_jsonl(in);
  ASSERT_EQ(c.prompts.size(), 3u);
  EXPECT_EQ(c.prompts[0].id, "0");
  EXPECT_EQ(c.prompts[2].id, "2");
  EXPECT_EQ(c.prompts[1].text, "b");
}

TEST(Ingest, JsonlCustomFieldAndEmptySkips) {
  std::istringstream in("{\"md\": \"x\"}\n\n{\"md\": \"\"}\n{\"md\": \"y\", \"other\": 1}\n");
  const Corpus c = ingest_jsonl(in, "md");
  ASSERT_EQ(c.prompts.size(), 2u);
  EXPECT_EQ(c.skipped_empty, 1u);
  EXPECT_EQ(c.prompts[1].id, "3");
}

TEST(Ingest, JsonlMissingFieldReportsLine) {
  std::istringstream in("{\"text\": \"a\"}\n{\"body\": \"b\"}\n");
  try {
    ingest_jsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::record);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream bad_json("{\"text\": \n");
  EXPECT_EQ(error_of([&] { ingest_jsonl(bad_json); }), Errc::record);
  std::istringstream not_string("{\"text\": 5}\n");
  EXPECT_EQ(error_of([&] { ingest_jsonl(not_string); }), Errc::record);
}

TEST(Ingest, EmptyCorpus) {
  std::istringstream in("{\"text\": \"\"}\n\n");
  EXPECT_EQ(error_of([&] { ingest_jsonl(in); }), Errc::empty_corpus);
}

TEST(Ingest, TextDirectory) {
  TempDir dir;
  write_file(dir.path() / "b.md", "second");
  write_file(dir.path() / "a.md", "first");
  write_file(dir.path() / "sub" / "c.md", "third");
  const Corpus c = ingest_corpus(dir.path(), CorpusFormat::text_dir);
  ASSERT_EQ(c.prompts.size(), 3u);
  EXPECT_EQ(c.prompts[0].id, "a.md");
  EXPECT_EQ(c.prompts[0].text, "first");
  EXPECT_EQ(c.prompts[2].id, "sub/c.md");
}

TEST(Ingest, TextDirectoryRejectsInvalidUtf8) {
  TempDir dir;
  write_file(dir.path() / "bad.txt", "\xff\xfe");
  EXPECT_EQ(error_of([&] { ingest_corpus(dir.path(), CorpusFormat::text_dir); }), Errc::record);
}

TEST(Ingest, MissingSource) {
  EXPECT_EQ(error_of([] { ingest_corpus("/nonexistent/corpus.jsonl", CorpusFormat::jsonl); }),
            Errc::io);
  EXPECT_EQ(error_of([] { ingest_corpus("/nonexistent/dir", CorpusFormat::text_dir); }), Errc::io);
}

TEST(Bench, SingleZstdRecord) {
  Corpus c;
  c.prompts.push_back({"only", std::string(2000, 'q')});
  BenchOptions opts;
  opts.methods = {Method::zstd};
  const auto report = run_benchmark(c, engine(), opts);
  ASSERT_EQ(report.per_prompt.size(), 1u);
  const auto& r = report.per_prompt[0];
  EXPECT_EQ(r.method, Method::zstd);
  EXPECT_EQ(r.metrics.compressed_bytes, compress(c.prompts[0].text, Method::zstd, nullptr).bytes.size());
  EXPECT_DOUBLE_EQ(r.metrics.compression_ratio, 2000.0 / static_cast<double>(r.metrics.compressed_bytes));
  EXPECT_TRUE(r.verification.ok());
  EXPECT_EQ(report.failure_count, 0u);
}

TEST(Bench, RecordsInCorpusOrderAcrossJobs) {
  const Corpus c = small_corpus();
  BenchOptions serial;
  BenchOptions parallel;
  parallel.jobs = 4;
  const auto a = run_benchmark(c, engine(), serial);
  const auto b = run_benchmark(c, engine(), parallel);
  ASSERT_EQ(a.per_prompt.size(), c.prompts.size() * 3);
  ASSERT_EQ(b.per_prompt.size(), a.per_prompt.size());
  for (std::size_t i = 0; i < a.per_prompt.size(); ++i) {
    EXPECT_EQ(a.per_prompt[i].prompt_id, c.prompts[i / 3].id);
    EXPECT_EQ(a.per_prompt[i].method, kAllMethods[i % 3]);
    EXPECT_EQ(a.per_prompt[i].prompt_id, b.per_prompt[i].prompt_id);
    EXPECT_EQ(a.per_prompt[i].metrics.compressed_bytes, b.per_prompt[i].metrics.compressed_bytes);
  }
  EXPECT_EQ(a.failure_count, 0u);
  EXPECT_EQ(a.run_config.tokenizer_id, "cl100k_base");
  EXPECT_EQ(a.run_config.zstd_level, 15);
}

TEST(Bench, ConfigurationErrorsSurfaceBeforeMeasuring) {
  const PromptCompressor bare(nullptr);
  Corpus c;
  c.prompts.push_back({"x", "hello"});
  EXPECT_EQ(error_of([&] { run_benchmark(c, bare); }), Errc::configuration);
  BenchOptions zstd_only;
  zstd_only.methods = {Method::zstd};
  EXPECT_EQ(run_benchmark(c, bare, zstd_only).failure_count, 0u);
  BenchOptions none;
  none.methods.clear();
  EXPECT_EQ(error_of([&] { run_benchmark(c, engine(), none); }), Errc::configuration);
}

TEST(Bench, FailuresAreCountedNotThrown) {
  Corpus c;
  c.prompts.push_back({"good", "hello"});
  c.prompts.push_back({"bad", "broken \xff text"});
  c.prompts.push_back({"after", "still measured"});
  const auto report = run_benchmark(c, engine());
  ASSERT_EQ(report.per_prompt.size(), 9u);
  EXPECT_EQ(report.failure_count, 3u);
  EXPECT_TRUE(report.per_prompt[0].verification.ok());
  for (int i = 3; i < 6; ++i) EXPECT_FALSE(report.per_prompt[i].verification.exact_match);
  EXPECT_TRUE(report.per_prompt[8].verification.ok());
  for (Method m : kAllMethods) {
    EXPECT_EQ(report.aggregates.at(m).compression_ratio.max,
              std::max(report.per_prompt[static_cast<int>(m)].metrics.compression_ratio,
                       report.per_prompt[6 + static_cast<int>(m)].metrics.compression_ratio));
  }
}

TEST(Bench, AggregatesMatchRecomputation) {
  const auto report = run_benchmark(small_corpus(), engine());
  const auto doc = nlohmann::json::parse([&] {
    std::ostringstream s;
    emit_report(report, ReportFormat::json, s);
    return s.str();
  }());
  ASSERT_EQ(doc.at("per_prompt").size(), report.per_prompt.size());
  for (Method m : kAllMethods) {
    std::vector<double> cr;
    for (const auto& row : doc.at("per_prompt")) {
      if (row.at("method") == to_string(m)) {
        cr.push_back(row.at("metrics").at("compression_ratio"));
      }
    }
    const auto expected = summarize(cr);
    const auto& agg = doc.at("aggregates").at(std::string(to_string(m))).at("compression_ratio");
    EXPECT_NEAR(agg.at("mean").get<double>(), expected.mean, 1e-9);
    EXPECT_NEAR(agg.at("std").get<double>(), expected.std, 1e-9);
    EXPECT_NEAR(agg.at("percentiles").at("50").get<double>(), expected.percentile(50), 1e-9);
  }
}

TEST(Report, CsvShape) {
  Corpus c;
  c.prompts.push_back({"a,b", "first prompt text"});
  c.prompts.push_back({"q\"uote", "second"});
  BenchOptions opts;
  opts.methods = {Method::zstd};
  const auto report = run_benchmark(c, engine(), opts);
  std::ostringstream s;
  emit_report(report, ReportFormat::csv, s);
  const std::string csv = s.str();
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::istringstream lines(csv);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0],
            "prompt_id,method,original_bytes,original_chars,compressed_bytes,compression_ratio,"
            "space_savings_pct,bits_per_char,compress_seconds,decompress_seconds,"
            "compress_mb_per_s,decompress_mb_per_s,exact_match,sha256_match,"
            "reconstruction_error_rate");
  const auto cells = split_csv_line(rows[1]);
  ASSERT_EQ(cells.size(), 15u);
  EXPECT_EQ(cells[0], "a,b");
  EXPECT_EQ(split_csv_line(rows[2])[0], "q\"uote");
  const auto& m = report.per_prompt[0].metrics;
  EXPECT_EQ(std::stoull(cells[4]), m.compressed_bytes);
  EXPECT_EQ(cells[5], format_real(m.compression_ratio));
  EXPECT_EQ(cells[12], "true");
}

TEST(Report, FormatReal) {
  EXPECT_EQ(format_real(5.0), "5.00000");
  EXPECT_EQ(format_real(72.2), "72.2000");
  EXPECT_EQ(format_real(-36.0), "-36.0000");
  EXPECT_EQ(format_real(0.0), "0.00000");
  EXPECT_EQ(format_real(1234567.0), "1.23457e+06");
}

TEST(Report, WritesFileAtomically) {
  TempDir dir;
  const auto report = run_benchmark(small_corpus(), engine());
  const fs::path dest = dir.path() / "report.json";
  emit_report(report, ReportFormat::json, dest);
  std::ifstream in(dest);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("per_prompt").size(), report.per_prompt.size());
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{}), 1);
  EXPECT_EQ(error_of([&] { emit_report(report, ReportFormat::csv, "/nonexistent/dir/r.csv"); }),
            Errc::io);
}

TEST(Bench, SizeBucketsAllSucceed) {
  Corpus c;
  const std::size_t sizes[] = {100, 900, 1500, 9000, 12000, 90000};
  for (std::size_t i = 0; i < std::size(sizes); ++i) {
    c.prompts.push_back({"s" + std::to_string(i),
                         testing::make_prompt(static_cast<testing::PromptKind>(i % 10), sizes[i], i)});
  }
  const auto report = run_benchmark(c, engine());
  std::map<int, std::pair<int, int>> buckets;  // bucket -> (ok, total)
  for (const auto& r : report.per_prompt) {
    const auto bytes = r.metrics.original_bytes;
    const int bucket = bytes < 1000 ? 0 : bytes < 10000 ? 1 : 2;
    buckets[bucket].second += 1;
    buckets[bucket].first += r.verification.ok() ? 1 : 0;
  }
  ASSERT_EQ(buckets.size(), 3u);
  for (const auto& [bucket, counts] : buckets) EXPECT_EQ(counts.first, counts.second);
}

}  // namespace
}  // namespace lopc
