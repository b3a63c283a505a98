// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lopc/bench.hpp"
#include "lopc/compressor.hpp"

namespace lopc::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,        // any module error
  kUsage = 2,          // bad flags
  kVerifyFailed = 3,   // a roundtrip did not reproduce its input
};

enum class Command { compress, decompress, verify, entropy, bench };

struct CliConfig {
  Command command = Command::compress;
  Method method = Method::hybrid;
  bool method_given = false;
  std::vector<Method> bench_methods{kAllMethods.begin(), kAllMethods.end()};
  int level = kDefaultLevel;
  std::string tokenizer_id = "cl100k_base";
  bool tokenizer_given = false;
  std::optional<std::filesystem::path> tokenizer_file;
  std::string input = "-";   // "-" is standard input
  std::string output = "-";  // "-" is standard output
  ReportFormat report_format = ReportFormat::json;
  CorpusFormat corpus_format = CorpusFormat::jsonl;
  std::string field = "text";
  unsigned jobs = 1;
};

/// Rank file for an identifier: the explicit path if given, else
/// $LOPC_TOKENIZER_FILE, else <dir>/<id>.tiktoken for $LOPC_TOKENIZER_DIR and
/// then the build's data directory.
std::filesystem::path resolve_rank_file(const std::string& identifier,
                                        const std::optional<std::filesystem::path>& explicit_path);

/// Runs one command. Diagnostics go to `err` only; `out` receives either the
/// complete result or nothing.
int dispatch(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Parses argv (including the program name) and dispatches.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lopc::cli
