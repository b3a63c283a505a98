// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/integrity.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <vector>

#include "lopc/error.hpp"
#include "lopc/utf8.hpp"

namespace lopc {
namespace {

std::vector<char32_t> raw_bytes(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(c);
  return out;
}

}  // namespace

Sha256Digest sha256(std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error(Errc::io, "SHA-256 digest failed");
  }
  return out;
}

Sha256Digest sha256(std::string_view text) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string to_hex(const Sha256Digest& digest) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : digest) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

double reconstruction_error_rate(std::string_view original, std::string_view reconstructed) {
  if (original == reconstructed) return 0.0;
  // Compared as scalars when both sides are valid UTF-8; a corrupted
  // reconstruction falls back to bytes.
  const bool scalars = utf8::is_valid(original) && utf8::is_valid(reconstructed);
  const auto a = scalars ? utf8::decode(original) : raw_bytes(original);
  const auto b = scalars ? utf8::decode(reconstructed) : raw_bytes(reconstructed);
  const std::size_t common = std::min(a.size(), b.size());
  const std::size_t longest = std::max(a.size(), b.size());
  std::size_t errors = longest - common;
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(longest);
}

VerificationReport verify_roundtrip(std::string_view original, std::string_view reconstructed) {
  VerificationReport r;
  r.exact_match = original == reconstructed;
  r.original_sha256 = sha256(original);
  r.reconstructed_sha256 = sha256(reconstructed);
  r.hash_match = r.original_sha256 == r.reconstructed_sha256;
  r.reconstruction_error_rate =
      r.exact_match ? 0.0 : reconstruction_error_rate(original, reconstructed);
  return r;
}

}  // namespace lopc
