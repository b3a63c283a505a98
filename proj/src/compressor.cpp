// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/compressor.hpp"

#include <algorithm>

#include "lopc/error.hpp"
#include "lopc/utf8.hpp"

namespace lopc {
namespace {

const TokenizerSpec& require_spec(const TokenizerSpec* spec, Method m, Errc code) {
  if (spec == nullptr) {
    throw Error(code, std::string(to_string(m)) + " method requires a tokenizer");
  }
  return *spec;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::zstd: return "zstd";
    case Method::token: return "token";
    case Method::hybrid: return "hybrid";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

CompressedPayload compress(std::string_view text, Method method, const TokenizerSpec* spec,
                           const CodecOptions& options) {
  options.validate();
  utf8::require_valid(text);
  switch (method) {
    case Method::zstd:
      return {method, byte_compress(as_bytes(text), options)};
    case Method::token: {
      const auto& tok = require_spec(spec, method, Errc::configuration);
      return {method, pack_tokens(tok.encode(text))};
    }
    case Method::hybrid: {
      const auto& tok = require_spec(spec, method, Errc::configuration);
      return {method, byte_compress(pack_tokens(tok.encode(text)), options)};
    }
  }
  throw Error(Errc::configuration, "unknown method");
}

std::string decompress(const CompressedPayload& payload, const TokenizerSpec* spec) {
  switch (payload.method) {
    case Method::zstd: {
      const Bytes raw = byte_decompress(payload.bytes);
      std::string text(as_chars(raw));
      utf8::require_valid(text);
      return text;
    }
    case Method::token: {
      const auto& tok = require_spec(spec, payload.method, Errc::tokenizer_mismatch);
      return tok.decode(unpack_tokens(payload.bytes));
    }
    case Method::hybrid: {
      const auto& tok = require_spec(spec, payload.method, Errc::tokenizer_mismatch);
      return tok.decode(unpack_tokens(byte_decompress(payload.bytes)));
    }
  }
  throw Error(Errc::format, "unknown method");
}

Bytes seal_envelope(const CompressedPayload& payload, std::string_view tokenizer_id) {
  if (tokenizer_id.size() > 255) {
    throw Error(Errc::configuration, "tokenizer id longer than 255 bytes");
  }
  if (tokenizer_id.empty() == needs_tokenizer(payload.method)) {
    throw Error(Errc::configuration,
                needs_tokenizer(payload.method)
                    ? std::string(to_string(payload.method)) + " envelope needs a tokenizer id"
                    : std::string("zstd envelope must not carry a tokenizer id"));
  }
  utf8::require_valid(tokenizer_id);
  Bytes out(kEnvelopeMinSize + tokenizer_id.size() + payload.bytes.size());
  auto it = std::copy(kEnvelopeMagic.begin(), kEnvelopeMagic.end(), out.begin());
  *it++ = kEnvelopeVersion;
  *it++ = static_cast<std::uint8_t>(payload.method);
  *it++ = static_cast<std::uint8_t>(tokenizer_id.size());
  it = std::copy(tokenizer_id.begin(), tokenizer_id.end(), it);
  std::copy(payload.bytes.begin(), payload.bytes.end(), it);
  return out;
}

OpenedEnvelope open_envelope(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kEnvelopeMinSize ||
      !std::equal(kEnvelopeMagic.begin(), kEnvelopeMagic.end(), bytes.begin())) {
    throw Error(Errc::not_an_envelope, "missing LOPC header");
  }
  if (bytes[4] != kEnvelopeVersion) {
    throw Error(Errc::version, "envelope version " + std::to_string(bytes[4]));
  }
  if (bytes[5] > static_cast<std::uint8_t>(Method::hybrid)) {
    throw Error(Errc::format, "unknown method code " + std::to_string(bytes[5]));
  }
  const auto method = static_cast<Method>(bytes[5]);
  const std::size_t id_len = bytes[6];
  if (bytes.size() < kEnvelopeMinSize + id_len) {
    throw Error(Errc::truncated_payload, "envelope ends inside tokenizer id");
  }
  OpenedEnvelope env;
  env.tokenizer_id = std::string(as_chars(bytes.subspan(kEnvelopeMinSize, id_len)));
  if (!utf8::is_valid(env.tokenizer_id) || env.tokenizer_id.empty() == needs_tokenizer(method)) {
    throw Error(Errc::format, "tokenizer id inconsistent with method");
  }
  const auto body = bytes.subspan(kEnvelopeMinSize + id_len);
  env.payload.method = method;
  env.payload.bytes.assign(body.begin(), body.end());
  return env;
}

PromptCompressor::PromptCompressor(std::shared_ptr<const TokenizerSpec> spec,
                                   CodecOptions options)
    : spec_(std::move(spec)), options_(options) {
  options_.validate();
}

CompressedPayload PromptCompressor::compress(std::string_view text, Method method) const {
  return lopc::compress(text, method, spec_.get(), options_);
}

std::string PromptCompressor::decompress(const CompressedPayload& payload) const {
  return lopc::decompress(payload, spec_.get());
}

Bytes PromptCompressor::compress_sealed(std::string_view text, Method method) const {
  const std::string_view id =
      needs_tokenizer(method) && spec_ ? std::string_view(spec_->identifier()) : "";
  return seal_envelope(compress(text, method), id);
}

std::string PromptCompressor::decompress_sealed(std::span<const std::uint8_t> envelope) const {
  OpenedEnvelope env = open_envelope(envelope);
  if (needs_tokenizer(env.payload.method)) {
    if (!spec_) {
      throw Error(Errc::tokenizer_mismatch,
                  "envelope needs tokenizer '" + env.tokenizer_id + "', none loaded");
    }
    if (env.tokenizer_id != spec_->identifier()) {
      throw Error(Errc::tokenizer_mismatch, "envelope was sealed with '" + env.tokenizer_id +
                                                "', loaded tokenizer is '" +
                                                spec_->identifier() + "'");
    }
  }
  return decompress(env.payload);
}

}  // namespace lopc
