// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lopc {

/// Failure categories surfaced by every module. The CLI maps them to exit
/// codes and one-line diagnostics.
enum class Errc {
  parse,
  format,
  unsupported_tokenizer,
  unknown_token,
  invalid_sequence,
  truncated_payload,
  configuration,
  codec,
  tokenizer_mismatch,
  not_an_envelope,
  version,
  undefined_metric,
  io,
  record,
  empty_corpus,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lopc
