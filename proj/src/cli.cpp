// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include "lopc/error.hpp"
#include "lopc/report_json.hpp"

#ifndef LOPC_DATA_DIR
#define LOPC_DATA_DIR "data"
#endif

namespace lopc::cli {
namespace {

namespace fs = std::filesystem;

std::string read_all(const std::string& input, std::istream& in) {
  std::ostringstream ss;
  if (input == "-") {
    ss << in.rdbuf();
    return std::move(ss).str();
  }
  std::ifstream file(input, std::ios::binary);
  if (!file) throw Error(Errc::io, "cannot open " + input);
  ss << file.rdbuf();
  if (file.bad()) throw Error(Errc::io, "failed reading " + input);
  return std::move(ss).str();
}

// The destination only ever sees complete output: files are replaced by
// rename, streams get one write of an in-memory buffer.
void write_all(const std::string& output, std::string_view data, std::ostream& out) {
  if (output == "-") {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw Error(Errc::io, "failed writing standard output");
    return;
  }
  const fs::path dest(output);
  const fs::path tmp = dest.string() + ".lopc-tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::io, "cannot write " + output);
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
    file.close();
    if (!file) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(Errc::io, "failed writing " + output);
    }
  }
  std::error_code ec;
  fs::rename(tmp, dest, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::io, "cannot replace " + output + ": " + ec.message());
  }
}

std::shared_ptr<const TokenizerSpec> load_spec(const CliConfig& cfg, const std::string& id) {
  const fs::path path = resolve_rank_file(id, cfg.tokenizer_file);
  return std::make_shared<const TokenizerSpec>(TokenizerSpec::load_file(id, path));
}

std::shared_ptr<const TokenizerSpec> spec_if_needed(const CliConfig& cfg,
                                                    std::initializer_list<Method> methods) {
  for (Method m : methods) {
    if (needs_tokenizer(m)) return load_spec(cfg, cfg.tokenizer_id);
  }
  return nullptr;
}

int run_compress(const CliConfig& cfg, std::istream& in, std::ostream& out) {
  const std::string text = read_all(cfg.input, in);
  const PromptCompressor engine(spec_if_needed(cfg, {cfg.method}), {cfg.level});
  const Bytes env = engine.compress_sealed(text, cfg.method);
  write_all(cfg.output, as_chars(env), out);
  return kOk;
}

int run_decompress(const CliConfig& cfg, std::istream& in, std::ostream& out) {
  const std::string raw = read_all(cfg.input, in);
  const OpenedEnvelope env = open_envelope(as_bytes(raw));
  std::shared_ptr<const TokenizerSpec> spec;
  if (needs_tokenizer(env.payload.method)) {
    spec = load_spec(cfg, cfg.tokenizer_given ? cfg.tokenizer_id : env.tokenizer_id);
  }
  const PromptCompressor engine(std::move(spec), {cfg.level});
  const std::string text = engine.decompress_sealed(as_bytes(raw));
  write_all(cfg.output, text, out);
  return kOk;
}

int run_verify(const CliConfig& cfg, std::istream& in, std::ostream& out) {
  const std::string text = read_all(cfg.input, in);
  const PromptCompressor engine(spec_if_needed(cfg, {cfg.method}), {cfg.level});
  const CompressedPayload payload = engine.compress(text, cfg.method);
  const VerificationReport report = verify_roundtrip(text, engine.decompress(payload));
  nlohmann::json doc = {
      {"method", std::string(to_string(cfg.method))},
      {"original_bytes", text.size()},
      {"compressed_bytes", payload.bytes.size()},
      {"verification", to_json(report)},
  };
  if (!text.empty() && !payload.bytes.empty()) {
    doc["compression_ratio"] = compression_ratio(text.size(), payload.bytes.size());
  }
  write_all(cfg.output, doc.dump(2) + "\n", out);
  return report.ok() ? kOk : kVerifyFailed;
}

int run_entropy(const CliConfig& cfg, std::istream& in, std::ostream& out) {
  const std::string text = read_all(cfg.input, in);
  EntropyReport report = shannon_entropy(text);
  nlohmann::json doc;
  if (cfg.method_given) {
    const PromptCompressor engine(spec_if_needed(cfg, {cfg.method}), {cfg.level});
    const double cr = compression_ratio(text.size(), engine.compress(text, cfg.method).bytes.size());
    if (std::isfinite(report.cr_theoretical)) report.efficiency_pct = efficiency(cr, report.cr_theoretical);
    doc = to_json(report);
    doc["method"] = std::string(to_string(cfg.method));
    doc["compression_ratio"] = cr;
  } else {
    doc = to_json(report);
  }
  write_all(cfg.output, doc.dump(2) + "\n", out);
  return kOk;
}

int run_bench(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  Corpus corpus;
  if (cfg.input == "-") {
    if (cfg.corpus_format != CorpusFormat::jsonl) {
      throw Error(Errc::configuration, "a text directory corpus needs --input");
    }
    corpus = ingest_jsonl(in, cfg.field);
  } else {
    corpus = ingest_corpus(cfg.input, cfg.corpus_format, cfg.field);
  }
  if (corpus.skipped_empty > 0) {
    err << "lopc: skipped " << corpus.skipped_empty << " empty prompt(s)\n";
  }

  std::shared_ptr<const TokenizerSpec> spec;
  for (Method m : cfg.bench_methods) {
    if (needs_tokenizer(m)) spec = load_spec(cfg, cfg.tokenizer_id);
  }
  const PromptCompressor engine(std::move(spec), {cfg.level});
  BenchOptions options;
  options.methods = cfg.bench_methods;
  options.jobs = cfg.jobs;
  const BenchmarkReport report = run_benchmark(corpus, engine, options);

  std::ostringstream buf;
  emit_report(report, cfg.report_format, buf);
  write_all(cfg.output, buf.str(), out);
  if (report.failure_count > 0) {
    err << "lopc: " << report.failure_count << " roundtrip failure(s)\n";
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

fs::path resolve_rank_file(const std::string& identifier,
                           const std::optional<fs::path>& explicit_path) {
  if (explicit_path) return *explicit_path;
  if (const char* env = std::getenv("LOPC_TOKENIZER_FILE"); env && *env) return env;
  const std::string name = identifier + ".tiktoken";
  if (const char* dir = std::getenv("LOPC_TOKENIZER_DIR"); dir && *dir) {
    return fs::path(dir) / name;
  }
  return fs::path(LOPC_DATA_DIR) / name;
}

int dispatch(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    CodecOptions{cfg.level}.validate();
    switch (cfg.command) {
      case Command::compress: return run_compress(cfg, in, out);
      case Command::decompress: return run_decompress(cfg, in, out);
      case Command::verify: return run_verify(cfg, in, out);
      case Command::entropy: return run_entropy(cfg, in, out);
      case Command::bench: return run_bench(cfg, in, out, err);
    }
  } catch (const Error& e) {
    err << "lopc: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "lopc: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lossless prompt compression: zstd, token packing and hybrid methods"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string method = "hybrid";
  std::string methods = "zstd,token,hybrid";
  std::string level = std::to_string(kDefaultLevel);
  std::string tokenizer_file;
  std::string report_format = "json";
  std::string corpus_format = "jsonl";

  auto add_common = [&](CLI::App* sub, bool with_method) {
    if (with_method) {
      sub->add_option("-m,--method", method, "zstd | token | hybrid")
          ->check(CLI::IsMember({"zstd", "token", "hybrid"}));
    }
    sub->add_option("-l,--level", level, "zstd level 1-22, or fast | balanced | max");
    sub->add_option("-t,--tokenizer", cfg.tokenizer_id, "tokenizer identifier");
    sub->add_option("--tokenizer-file", tokenizer_file, "BPE rank file");
    sub->add_option("-i,--input", cfg.input, "input path, '-' for stdin");
    sub->add_option("-o,--output", cfg.output, "output path, '-' for stdout");
  };

  auto* compress = app.add_subcommand("compress", "compress text into a sealed envelope");
  add_common(compress, true);
  auto* decompress = app.add_subcommand("decompress", "restore text from an envelope");
  add_common(decompress, false);
  auto* verify = app.add_subcommand("verify", "compress, decompress and verify the roundtrip");
  add_common(verify, true);
  auto* entropy = app.add_subcommand("entropy", "character entropy and theoretical limits");
  add_common(entropy, true);
  auto* bench = app.add_subcommand("bench", "benchmark a corpus and emit a report");
  add_common(bench, false);
  bench->add_option("--methods", methods, "comma-separated methods");
  bench->add_option("--format", corpus_format, "corpus format: jsonl | dir")
      ->check(CLI::IsMember({"jsonl", "dir"}));
  bench->add_option("--field", cfg.field, "JSONL text field");
  bench->add_option("--report-format", report_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("-j,--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lopc: " << e.what() << '\n';
    return kUsage;
  }

  auto usage = [&](const std::string& msg) {
    err << "lopc: " << msg << '\n';
    return kUsage;
  };

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "compress") cfg.command = Command::compress;
  else if (name == "decompress") cfg.command = Command::decompress;
  else if (name == "verify") cfg.command = Command::verify;
  else if (name == "entropy") cfg.command = Command::entropy;
  else cfg.command = Command::bench;

  cfg.method = *parse_method(method);
  cfg.method_given = chosen->get_option_no_throw("--method") != nullptr &&
                     chosen->get_option("--method")->count() > 0;
  cfg.tokenizer_given = chosen->get_option("--tokenizer")->count() > 0;
  if (!tokenizer_file.empty()) cfg.tokenizer_file = tokenizer_file;

  if (auto tier = level_for_tier(level)) {
    cfg.level = *tier;
  } else {
    try {
      std::size_t used = 0;
      cfg.level = std::stoi(level, &used);
      if (used != level.size()) return usage("invalid --level '" + level + "'");
    } catch (const std::exception&) {
      return usage("invalid --level '" + level + "'");
    }
  }
  if (cfg.level < kMinLevel || cfg.level > kMaxLevel) {
    return usage("--level must be within [1, 22]");
  }

  cfg.bench_methods.clear();
  std::stringstream list(methods);
  for (std::string item; std::getline(list, item, ',');) {
    auto m = parse_method(item);
    if (!m) return usage("unknown method '" + item + "'");
    cfg.bench_methods.push_back(*m);
  }
  if (cfg.bench_methods.empty()) return usage("--methods is empty");

  cfg.report_format = report_format == "csv" ? ReportFormat::csv : ReportFormat::json;
  cfg.corpus_format = corpus_format == "dir" ? CorpusFormat::text_dir : CorpusFormat::jsonl;
  return dispatch(cfg, in, out, err);
}

}  // namespace lopc::cli
