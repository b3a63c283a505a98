// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>
#include "lopc/error.hpp"
#include "lopc/report_json.hpp"
#include "lopc/utf8.hpp"

namespace lopc {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::io, "failed reading " + path.string());
  return std::move(ss).str();
}

PromptRecord measure_one(const Prompt& prompt, Method method, const PromptCompressor& engine) {
  PromptRecord rec;
  rec.prompt_id = prompt.id;
  rec.method = method;
  const std::uint64_t bytes = prompt.text.size();
  const std::uint64_t chars = utf8::count_scalars(prompt.text);
  try {
    auto t0 = Clock::now();
    const CompressedPayload payload = engine.compress(prompt.text, method);
    const double compress_s = seconds_since(t0);

    t0 = Clock::now();
    const std::string restored = engine.decompress(payload);
    const double decompress_s = seconds_since(t0);

    rec.verification = verify_roundtrip(prompt.text, restored);
    rec.metrics = measure(bytes, chars, payload.bytes.size(), compress_s, decompress_s);
  } catch (const Error&) {
    rec.verification = verify_roundtrip(prompt.text, {});
    rec.metrics = PromptMetrics{};
    rec.metrics.original_bytes = bytes;
    rec.metrics.original_chars = chars;
  }
  return rec;
}

void write_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "prompt_id,method,original_bytes,original_chars,compressed_bytes,compression_ratio,"
         "space_savings_pct,bits_per_char,compress_seconds,decompress_seconds,"
         "compress_mb_per_s,decompress_mb_per_s,exact_match,sha256_match,"
         "reconstruction_error_rate\n";
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  for (const auto& r : report.per_prompt) {
    const auto& m = r.metrics;
    out << quoted(r.prompt_id) << ',' << to_string(r.method) << ',' << m.original_bytes << ','
        << m.original_chars << ',' << m.compressed_bytes << ',' << format_real(m.compression_ratio)
        << ',' << format_real(m.space_savings_pct) << ',' << format_real(m.bits_per_char) << ','
        << format_real(m.compress_seconds) << ',' << format_real(m.decompress_seconds) << ','
        << format_real(m.compress_mb_per_s) << ',' << format_real(m.decompress_mb_per_s) << ','
        << (r.verification.exact_match ? "true" : "false") << ','
        << (r.verification.hash_match ? "true" : "false") << ','
        << format_real(r.verification.reconstruction_error_rate) << '\n';
  }
}

}  // namespace

Corpus ingest_jsonl(std::istream& in, const std::string& field, std::string source_descriptor) {
  Corpus corpus;
  corpus.source_descriptor = std::move(source_descriptor);
  std::string line;
  std::size_t line_no = 0;
  for (; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::record, "line " + std::to_string(line_no + 1) + ": " + e.what());
    }
    const auto it = obj.is_object() ? obj.find(field) : obj.end();
    if (it == obj.end() || !it->is_string()) {
      throw Error(Errc::record, "line " + std::to_string(line_no + 1) +
                                    ": missing string field '" + field + "'");
    }
    std::string text = it->get<std::string>();
    if (text.empty()) {
      ++corpus.skipped_empty;
      continue;
    }
    corpus.prompts.push_back({std::to_string(line_no), std::move(text)});
  }
  if (in.bad()) throw Error(Errc::io, "failed reading " + corpus.source_descriptor);
  if (corpus.prompts.empty()) {
    throw Error(Errc::empty_corpus, "no usable prompts in " + corpus.source_descriptor);
  }
  return corpus;
}

Corpus ingest_corpus(const fs::path& source, CorpusFormat format, const std::string& field) {
  if (format == CorpusFormat::jsonl) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + source.string());
    return ingest_jsonl(in, field, source.string());
  }

  std::error_code ec;
  if (!fs::is_directory(source, ec)) throw Error(Errc::io, source.string() + " is not a directory");
  std::vector<fs::path> files;
  for (fs::recursive_directory_iterator it(source, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file()) files.push_back(it->path());
  }
  if (ec) throw Error(Errc::io, "cannot list " + source.string() + ": " + ec.message());

  Corpus corpus;
  corpus.source_descriptor = source.string();
  std::vector<std::pair<std::string, fs::path>> named;
  for (const auto& f : files) named.emplace_back(fs::relative(f, source).generic_string(), f);
  std::sort(named.begin(), named.end());
  for (auto& [id, path] : named) {
    std::string text = read_file(path);
    if (!utf8::is_valid(text)) throw Error(Errc::record, id + ": not valid UTF-8");
    if (text.empty()) {
      ++corpus.skipped_empty;
      continue;
    }
    corpus.prompts.push_back({id, std::move(text)});
  }
  if (corpus.prompts.empty()) {
    throw Error(Errc::empty_corpus, "no usable prompts in " + corpus.source_descriptor);
  }
  return corpus;
}

BenchmarkReport run_benchmark(const Corpus& corpus, const PromptCompressor& engine,
                              const BenchOptions& options) {
  if (corpus.prompts.empty()) throw Error(Errc::empty_corpus, "corpus has no prompts");
  if (options.methods.empty()) throw Error(Errc::configuration, "no methods selected");
  for (Method m : options.methods) {
    if (needs_tokenizer(m) && engine.tokenizer() == nullptr) {
      throw Error(Errc::configuration, std::string(to_string(m)) + " method needs a tokenizer");
    }
  }

  BenchmarkReport report;
  report.run_config.tokenizer_id = engine.tokenizer() ? engine.tokenizer()->identifier() : "";
  report.run_config.zstd_level = engine.options().level;
  report.run_config.corpus = corpus.source_descriptor;
  report.run_config.timestamp = utc_timestamp();

  const std::size_t n_methods = options.methods.size();
  report.per_prompt.resize(corpus.prompts.size() * n_methods);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < corpus.prompts.size();) {
      for (std::size_t k = 0; k < n_methods; ++k) {
        report.per_prompt[i * n_methods + k] =
            measure_one(corpus.prompts[i], options.methods[k], engine);
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(
                                         options.jobs, static_cast<unsigned>(corpus.prompts.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  report.failure_count = static_cast<std::size_t>(
      std::count_if(report.per_prompt.begin(), report.per_prompt.end(),
                    [](const PromptRecord& r) { return !r.verification.exact_match; }));
  report.aggregates = aggregate(report.per_prompt);
  return report;
}

std::map<Method, MethodAggregates> aggregate(const std::vector<PromptRecord>& records) {
  struct Columns {
    std::vector<double> cr, ss, bpc, cmb, dmb;
  };
  std::map<Method, Columns> cols;
  for (const auto& r : records) {
    // Failed rows carry no meaningful sizes.
    if (!r.verification.exact_match) continue;
    auto& c = cols[r.method];
    c.cr.push_back(r.metrics.compression_ratio);
    c.ss.push_back(r.metrics.space_savings_pct);
    c.bpc.push_back(r.metrics.bits_per_char);
    c.cmb.push_back(r.metrics.compress_mb_per_s);
    c.dmb.push_back(r.metrics.decompress_mb_per_s);
  }
  std::map<Method, MethodAggregates> out;
  for (const auto& [m, c] : cols) {
    out[m] = {summarize(c.cr), summarize(c.ss), summarize(c.bpc), summarize(c.cmb),
              summarize(c.dmb)};
  }
  return out;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", value);
  return buf;
}

void emit_report(const BenchmarkReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    write_csv(report, out);
  }
  if (!out) throw Error(Errc::io, "failed writing report");
}

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const fs::path& destination) {
  std::ostringstream buf;
  emit_report(report, format, buf);
  const fs::path tmp = destination.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + destination.string());
    out << buf.str();
    out.close();
    if (!out) throw Error(Errc::io, "failed writing " + destination.string());
  }
  std::error_code ec;
  fs::rename(tmp, destination, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::io, "cannot write " + destination.string());
  }
}

}  // namespace lopc
