// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/corpus_gen.hpp"

#include <array>
#include <cmath>
#include <string_view>

#include "lopc/utf8.hpp"

namespace lopc::testing {
namespace {

constexpr std::array<std::string_view, 64> kWords = {
    "model",     "token",      "prompt",   "compression", "the",       "of",       "and",
    "to",        "a",          "in",       "is",          "that",      "for",      "with",
    "dataset",   "training",   "inference", "pipeline",   "tokenizer", "layer",    "attention",
    "gradient",  "batch",      "sequence", "encoder",     "decoder",   "output",   "input",
    "weights",   "parameters", "config",   "example",     "function",  "returns",  "value",
    "string",    "integer",    "argument", "default",     "optional",  "method",   "class",
    "instance",  "library",    "install",  "import",      "device",    "memory",   "storage",
    "latency",   "throughput", "request",  "response",    "server",    "client",   "cache",
    "embedding", "vector",     "database", "query",       "result",    "error",    "warning",
    "documentation"};

constexpr std::array<std::string_view, 24> kIdentifiers = {
    "model",  "tokenizer", "inputs", "outputs", "config", "batch_size", "logits", "labels",
    "device", "trainer",   "args",   "dataset", "loss",   "optimizer",  "step",   "epoch",
    "x",      "y",         "result", "values",  "path",   "name",       "items",  "idx"};

constexpr std::array<std::string_view, 12> kMultilingual = {
    "日本語のテキストを圧縮します。",       "这是一个用于测试的中文句子。",
    "한국어 문장도 포함되어 있습니다.",     "Это предложение на русском языке.",
    "Ελληνικά κείμενα με τόνους.",          "هذه جملة باللغة العربية.",
    "यह हिंदी में एक वाक्य है।",           "Dies ist ein deutscher Satz mit Umlauten: äöüß.",
    "Une phrase française avec des accents.", "Una frase en español, ¿verdad?",
    "ภาษาไทยไม่มีช่องว่างระหว่างคำ",        "Tiếng Việt có nhiều dấu thanh."};

constexpr std::array<std::string_view, 16> kEmoji = {
    "😀", "🎉", "👍🏽", "👨‍👩‍👧‍👦", "🇺🇸", "🚀", "❤️", "🔥", "✨", "🤖", "📦", "🧪", "✅", "⚠️", "🐍", "💡"};

std::string_view pick(Rng& rng, auto const& list) { return list[rng.below(list.size())]; }

void sentence(Rng& rng, std::string& out, std::size_t min_words = 6) {
  const std::size_t n = min_words + rng.below(10);
  for (std::size_t i = 0; i < n; ++i) {
    std::string w(pick(rng, kWords));
    if (i == 0) w[0] = static_cast<char>(w[0] - 32);
    out += w;
    out += i + 1 == n ? ". " : (rng.chance(8) ? ", " : " ");
  }
}

void markdown_block(Rng& rng, std::string& out) {
  switch (rng.below(5)) {
    case 0:
      out += "## ";
      out += pick(rng, kWords);
      out += " ";
      out += pick(rng, kWords);
      out += "\n\n";
      break;
    case 1:
      for (int i = 0; i < 3; ++i) {
        out += "- **";
        out += pick(rng, kWords);
        out += "**: ";
        sentence(rng, out, 3);
        out += "\n";
      }
      out += "\n";
      break;
    case 2:
      out += "```python\nfrom transformers import AutoModel\nmodel = AutoModel.from_pretrained(\"";
      out += pick(rng, kIdentifiers);
      out += "\")\n```\n\n";
      break;
    case 3:
      out += "See [the ";
      out += pick(rng, kWords);
      out += " guide](https://huggingface.co/docs/";
      out += pick(rng, kIdentifiers);
      out += ") for details.\n\n";
      break;
    default:
      sentence(rng, out);
      sentence(rng, out);
      out += "\n\n";
  }
}

void python_block(Rng& rng, std::string& out) {
  const auto fn = pick(rng, kIdentifiers);
  out += "def compute_";
  out += fn;
  out += "(";
  out += pick(rng, kIdentifiers);
  out += ", ";
  out += pick(rng, kIdentifiers);
  out += "=None):\n    \"\"\"";
  sentence(rng, out, 4);
  out += "\"\"\"\n";
  const std::size_t lines = 2 + rng.below(5);
  for (std::size_t i = 0; i < lines; ++i) {
    out += "    ";
    out += pick(rng, kIdentifiers);
    out += " = ";
    out += pick(rng, kIdentifiers);
    out += "[" + std::to_string(rng.below(64)) + "] * ";
    out += std::to_string(rng.below(1000));
    out += "\n";
  }
  out += "    return ";
  out += pick(rng, kIdentifiers);
  out += "\n\n";
}

void json_block(Rng& rng, std::string& out) {
  out += "{\"id\": " + std::to_string(rng.below(100000)) + ", \"";
  out += pick(rng, kIdentifiers);
  out += "\": \"";
  out += pick(rng, kWords);
  out += "\", \"score\": 0." + std::to_string(rng.below(1000000)) + ", \"tags\": [\"";
  out += pick(rng, kWords);
  out += "\", \"";
  out += pick(rng, kWords);
  out += "\"], \"active\": ";
  out += rng.chance(50) ? "true" : "false";
  out += "},\n";
}

void html_block(Rng& rng, std::string& out) {
  out += "<div class=\"";
  out += pick(rng, kIdentifiers);
  out += "\"><p>";
  sentence(rng, out, 4);
  out += "</p><a href=\"/";
  out += pick(rng, kWords);
  out += "\">";
  out += pick(rng, kWords);
  out += "</a></div>\n";
}

void multilingual_block(Rng& rng, std::string& out) {
  out += pick(rng, kMultilingual);
  out += rng.chance(30) ? "\n" : " ";
}

void emoji_block(Rng& rng, std::string& out) {
  sentence(rng, out, 2);
  const std::size_t n = 1 + rng.below(4);
  for (std::size_t i = 0; i < n; ++i) out += pick(rng, kEmoji);
  out += rng.chance(20) ? "\n" : " ";
}

void whitespace_block(Rng& rng, std::string& out) {
  out += pick(rng, kWords);
  static constexpr std::array<std::string_view, 6> kGaps = {"  ", "\t", "\n\n", "   \n", "\r\n", " \t "};
  out += pick(rng, kGaps);
}

void config_block(Rng& rng, std::string& out) {
  out += pick(rng, kIdentifiers);
  out += ":\n  ";
  out += pick(rng, kIdentifiers);
  out += ": " + std::to_string(rng.below(4096)) + "\n  ";
  out += pick(rng, kIdentifiers);
  out += ": \"";
  out += pick(rng, kWords);
  out += "\"\n";
}

// Keeps the first `chars` scalars.
void truncate_scalars(std::string& s, std::size_t chars) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (seen == chars) {
        s.resize(i);
        return;
      }
      ++seen;
    }
  }
}

}  // namespace

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string make_prompt(PromptKind kind, std::size_t chars, std::uint64_t seed) {
  Rng rng(seed);
  std::string out;
  out.reserve(chars * 2);
  // The degenerate kind repeats one unit chosen per prompt.
  static constexpr std::array<std::string_view, 4> kUnits = {"a", "ab", "=", "lorem ipsum "};
  const std::string_view unit = kUnits[rng.below(kUnits.size())];
  std::size_t count = 0;
  while (count < chars) {
    const std::size_t before = out.size();
    for (int burst = 0; burst < 16; ++burst) {
      switch (kind) {
        case PromptKind::markdown: markdown_block(rng, out); break;
        case PromptKind::python: python_block(rng, out); break;
        case PromptKind::json: json_block(rng, out); break;
        case PromptKind::html: html_block(rng, out); break;
        case PromptKind::prose: sentence(rng, out); break;
        case PromptKind::multilingual: multilingual_block(rng, out); break;
        case PromptKind::emoji: emoji_block(rng, out); break;
        case PromptKind::repeat: out += unit; break;
        case PromptKind::whitespace: whitespace_block(rng, out); break;
        case PromptKind::config: config_block(rng, out); break;
      }
    }
    count += utf8::count_scalars(std::string_view(out).substr(before));
  }
  truncate_scalars(out, chars);
  return out;
}

std::vector<Prompt> bundled_corpus() {
  constexpr std::size_t kCount = 210;
  constexpr double kMin = 129.0;
  constexpr double kMax = 200000.0;
  std::vector<Prompt> prompts;
  prompts.reserve(kCount + 4);
  for (std::size_t i = 0; i < kCount; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kCount - 1);
    const auto chars = static_cast<std::size_t>(std::llround(kMin * std::pow(kMax / kMin, t)));
    const auto kind = static_cast<PromptKind>(i % kPromptKinds);
    prompts.push_back({"gen-" + std::to_string(i), make_prompt(kind, chars, 1000 + i)});
  }
  prompts.push_back({"edge-space", " "});
  prompts.push_back({"edge-newline", "\n"});
  prompts.push_back({"edge-char", "a"});
  prompts.push_back({"edge-emoji", "👨‍👩‍👧‍👦"});
  return prompts;
}

Corpus bundled_corpus_as_corpus() {
  Corpus c;
  c.prompts = bundled_corpus();
  c.source_descriptor = "bundled";
  return c;
}

std::string rank_file_path() { return LOPC_RANK_FILE; }

std::shared_ptr<const TokenizerSpec> cl100k() {
  static const auto spec = std::make_shared<const TokenizerSpec>(
      TokenizerSpec::load_file("cl100k_base", rank_file_path()));
  return spec;
}

}  // namespace lopc::testing
