// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lopc::utf8 {

/// Strict validation: rejects overlong forms, surrogates and code points
/// above U+10FFFF.
bool is_valid(std::string_view bytes) noexcept;

/// Throws Error(Errc::invalid_sequence) naming the first bad offset.
void require_valid(std::string_view bytes);

/// Decodes validated UTF-8 into Unicode scalar values.
std::vector<char32_t> decode(std::string_view bytes);

/// Number of Unicode scalar values. Input must be valid UTF-8.
std::size_t count_scalars(std::string_view bytes) noexcept;

void append(std::string& out, char32_t scalar);

}  // namespace lopc::utf8
