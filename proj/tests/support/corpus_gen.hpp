// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Deterministic prompt corpus and shared fixtures for the test suites.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lopc/bench.hpp"
#include "lopc/tokenizer.hpp"

namespace lopc::testing {

enum class PromptKind {
  markdown,
  python,
  json,
  html,
  prose,
  multilingual,
  emoji,
  repeat,
  whitespace,
  config,
};

inline constexpr int kPromptKinds = 10;

/// SplitMix64: fully specified, so generated corpora are identical on every
/// platform (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::uint64_t state_;
};

/// Exactly `chars` Unicode scalar values of the given kind.
std::string make_prompt(PromptKind kind, std::size_t chars, std::uint64_t seed);

/// 210 prompts with sizes log-spaced from 129 to 200,000 characters, cycling
/// through every kind, followed by a few single-character edge prompts.
std::vector<Prompt> bundled_corpus();

Corpus bundled_corpus_as_corpus();

std::string rank_file_path();

/// cl100k_base loaded once per process.
std::shared_ptr<const TokenizerSpec> cl100k();

}  // namespace lopc::testing
