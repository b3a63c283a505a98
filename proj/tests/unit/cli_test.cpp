// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "support/corpus_gen.hpp"

namespace lopc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_data = "") {
  args.insert(args.begin(), "lopc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_data);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_rank_file(std::vector<std::string> args) {
  args.push_back("--tokenizer-file");
  args.push_back(testing::rank_file_path());
  return args;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("lopc-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, std::string_view data) {
  std::ofstream(p, std::ios::binary) << data;
}

TEST(Cli, RoundtripThroughStreamsAllMethods) {
  const std::string text = testing::make_prompt(testing::PromptKind::markdown, 5000, 1);
  for (const char* m : {"zstd", "token", "hybrid"}) {
    const auto c = run_cli(with_rank_file({"compress", "--method", m, "--level", "15"}), text);
    ASSERT_EQ(c.code, kOk) << c.err;
    EXPECT_EQ(c.out.substr(0, 4), "LOPC");
    const auto d = run_cli(with_rank_file({"decompress"}), c.out);
    ASSERT_EQ(d.code, kOk) << d.err;
    EXPECT_EQ(d.out, text);
  }
}

TEST(Cli, IdenticalInvocationsGiveIdenticalBytes) {
  const std::string text = testing::make_prompt(testing::PromptKind::json, 3000, 2);
  const auto a = run_cli(with_rank_file({"compress"}), text);
  const auto b = run_cli(with_rank_file({"compress"}), text);
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(static_cast<unsigned char>(a.out[5]), 0x02);  // hybrid is the default
}

TEST(Cli, TierAliases) {
  const auto fast = run_cli({"compress", "-m", "zstd", "-l", "fast"}, "abc");
  EXPECT_EQ(fast.code, kOk) << fast.err;
  EXPECT_EQ(run_cli({"compress", "-m", "zstd", "-l", "23"}, "abc").code, kUsage);
  EXPECT_EQ(run_cli({"compress", "-m", "zstd", "-l", "warp"}, "abc").code, kUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"explode"}).code, kUsage);
  EXPECT_EQ(run_cli({"compress", "--method", "brotli"}).code, kUsage);
  const auto r = run_cli({"bench", "--methods", "zstd,lzma"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ModuleErrorsAreOneLineDiagnostics) {
  const auto r = run_cli({"decompress"}, "LOPXgarbage");
  EXPECT_EQ(r.code, kFailure);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  const auto missing = run_cli({"compress", "--tokenizer-file", "/nonexistent/x.tiktoken"}, "x");
  EXPECT_EQ(missing.code, kFailure);
  EXPECT_TRUE(missing.out.empty());
}

TEST(Cli, TokenizerMismatch) {
  const auto c = run_cli(with_rank_file({"compress", "-m", "hybrid"}), "some text");
  ASSERT_EQ(c.code, kOk);
  // Load the same ranks under a different identifier.
  const auto d = run_cli(with_rank_file({"decompress", "--tokenizer", "p50k_base"}), c.out);
  EXPECT_EQ(d.code, kFailure);
  EXPECT_TRUE(d.out.empty());
  EXPECT_NE(d.err.find("cl100k_base"), std::string::npos) << d.err;
}

TEST(Cli, Verify) {
  const auto r = run_cli(with_rank_file({"verify", "-m", "token"}), "verify me please");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("method"), "token");
  EXPECT_TRUE(doc.at("verification").at("exact_match").get<bool>());
  EXPECT_EQ(doc.at("verification").at("reconstruction_error_rate").get<double>(), 0.0);
}

TEST(Cli, Entropy) {
  const auto r = run_cli({"entropy"}, "abab");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(doc.at("entropy_bits_per_char").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(doc.at("cr_theoretical").get<double>(), 8.0);
  EXPECT_TRUE(doc.at("efficiency_pct").is_null());

  const auto flat = run_cli({"entropy"}, "aaaa");
  const auto flat_doc = nlohmann::json::parse(flat.out);
  EXPECT_TRUE(flat_doc.at("cr_theoretical_infinite").get<bool>());

  const auto with_method = run_cli({"entropy", "-m", "zstd"}, std::string(500, 'a') + "bcd");
  ASSERT_EQ(with_method.code, kOk) << with_method.err;
  EXPECT_TRUE(nlohmann::json::parse(with_method.out).at("efficiency_pct").is_number());

  EXPECT_EQ(run_cli({"entropy"}, "").code, kFailure);
}

TEST(Cli, FileOutputIsAtomic) {
  TempDir dir;
  const fs::path in = dir / "in.txt";
  const fs::path out = dir / "out.lopc";
  spit(in, "file based roundtrip");
  spit(out, "previous contents");
  // Unreadable rank file: the command fails and the old output survives.
  auto bad = run_cli({"compress", "-i", in.string(), "-o", out.string(), "--tokenizer-file",
                      "/nonexistent"});
  EXPECT_EQ(bad.code, kFailure);
  EXPECT_EQ(slurp(out), "previous contents");

  auto ok = run_cli(with_rank_file({"compress", "-i", in.string(), "-o", out.string()}));
  ASSERT_EQ(ok.code, kOk) << ok.err;
  const fs::path back = dir / "back.txt";
  ok = run_cli(with_rank_file({"decompress", "-i", out.string(), "-o", back.string()}));
  ASSERT_EQ(ok.code, kOk) << ok.err;
  EXPECT_EQ(slurp(back), "file based roundtrip");
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    EXPECT_EQ(entry.path().filename().string().find("lopc-tmp"), std::string::npos) << entry.path();
  }
}

TEST(Cli, BenchJsonlToCsv) {
  std::string jsonl;
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = {{"text", testing::make_prompt(testing::PromptKind::prose, 300 + i * 50, i)}};
    jsonl += row.dump() + "\n";
  }
  const auto r = run_cli(with_rank_file({"bench", "--report-format", "csv", "-j", "2"}), jsonl);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 4 * 3);

  const auto j = run_cli({"bench", "--methods", "zstd", "--field", "text"}, jsonl);
  ASSERT_EQ(j.code, kOk) << j.err;
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc.at("per_prompt").size(), 4u);
  EXPECT_EQ(doc.at("failure_count"), 0);
}

TEST(Cli, BenchTextDirectory) {
  TempDir dir;
  fs::create_directories(dir / "corpus");
  spit(dir / "corpus" / "a.md", "# Title\n\nSome text.");
  spit(dir / "corpus" / "b.md", "More text here.");
  const auto r = run_cli(with_rank_file(
      {"bench", "--format", "dir", "-i", (dir / "corpus").string(), "--report-format", "csv"}));
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("a.md,hybrid"), std::string::npos);
}

TEST(Cli, RankFileResolution) {
  EXPECT_EQ(resolve_rank_file("cl100k_base", fs::path("/x/y")), fs::path("/x/y"));
  ::setenv("LOPC_TOKENIZER_DIR", "/opt/ranks", 1);
  EXPECT_EQ(resolve_rank_file("p50k_base", std::nullopt), fs::path("/opt/ranks/p50k_base.tiktoken"));
  ::setenv("LOPC_TOKENIZER_FILE", "/opt/one.tiktoken", 1);
  EXPECT_EQ(resolve_rank_file("p50k_base", std::nullopt), fs::path("/opt/one.tiktoken"));
  ::unsetenv("LOPC_TOKENIZER_FILE");
  ::unsetenv("LOPC_TOKENIZER_DIR");
  EXPECT_EQ(resolve_rank_file("cl100k_base", std::nullopt).filename(), "cl100k_base.tiktoken");
}

TEST(CliBinary, EndToEndWithExitCodes) {
  TempDir dir;
  const std::string bin = LOPC_CLI_PATH;
  const std::string text = testing::make_prompt(testing::PromptKind::multilingual, 4000, 9);
  spit(dir / "in.txt", text);
  auto sh = [](const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string rank = " --tokenizer-file '" + testing::rank_file_path() + "'";
  ASSERT_EQ(sh("'" + bin + "' compress -i '" + (dir / "in.txt").string() + "' -o '" +
               (dir / "env").string() + "'" + rank),
            0);
  ASSERT_EQ(sh("'" + bin + "' decompress < '" + (dir / "env").string() + "' > '" +
               (dir / "out.txt").string() + "'" + rank),
            0);
  EXPECT_EQ(slurp(dir / "out.txt"), text);
  EXPECT_EQ(sh("'" + bin + "' frobnicate 2>/dev/null"), 2);
  EXPECT_EQ(sh("echo nonsense | '" + bin + "' decompress 2>/dev/null >/dev/null"), 1);
}

}  // namespace
}  // namespace lopc::cli
