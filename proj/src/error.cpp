// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/error.hpp"

namespace lopc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parse: return "parse error";
    case Errc::format: return "format error";
    case Errc::unsupported_tokenizer: return "unsupported tokenizer";
    case Errc::unknown_token: return "unknown token";
    case Errc::invalid_sequence: return "invalid sequence";
    case Errc::truncated_payload: return "truncated payload";
    case Errc::configuration: return "configuration error";
    case Errc::codec: return "codec error";
    case Errc::tokenizer_mismatch: return "tokenizer mismatch";
    case Errc::not_an_envelope: return "not an envelope";
    case Errc::version: return "unsupported version";
    case Errc::undefined_metric: return "undefined metric";
    case Errc::io: return "I/O error";
    case Errc::record: return "record error";
    case Errc::empty_corpus: return "empty corpus";
  }
  return "error";
}

}  // namespace lopc
