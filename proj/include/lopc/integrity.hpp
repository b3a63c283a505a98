// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace lopc {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> data);
Sha256Digest sha256(std::string_view text);

/// Lowercase, 64 characters.
std::string to_hex(const Sha256Digest& digest);

struct VerificationReport {
  bool exact_match = false;
  Sha256Digest original_sha256{};
  Sha256Digest reconstructed_sha256{};
  bool hash_match = false;
  double reconstruction_error_rate = 0.0;

  /// Hashes agree while the bytes differ.
  bool anomaly() const noexcept { return hash_match && !exact_match; }
  bool ok() const noexcept { return exact_match && hash_match && reconstruction_error_rate == 0.0; }
};

/// Positional mismatch rate over Unicode scalar values. When lengths differ
/// each unmatched position counts as an error and the denominator is the
/// longer length, so any difference gives a rate in (0, 1].
double reconstruction_error_rate(std::string_view original, std::string_view reconstructed);

VerificationReport verify_roundtrip(std::string_view original, std::string_view reconstructed);

}  // namespace lopc
