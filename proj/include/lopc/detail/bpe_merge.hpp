// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Byte-pair merge over a single pre-tokenized piece. At every step the
// adjacent pair with the lowest rank is merged, leftmost first on ties, until
// no adjacent pair is in the vocabulary. Two implementations with identical
// output: a quadratic scan for short pieces and a heap for long ones.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string_view>
#include <tuple>
#include <vector>

#include "lopc/error.hpp"

namespace lopc::detail {

inline constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

template <class Lookup>
std::uint32_t rank_or_none(const Lookup& lookup, std::string_view bytes) {
  std::optional<std::uint32_t> r = lookup(bytes);
  return r ? *r : kNoRank;
}

template <class Lookup>
void emit_segment(const Lookup& lookup, std::string_view bytes, std::vector<std::uint32_t>& out) {
  std::optional<std::uint32_t> r = lookup(bytes);
  if (!r) throw Error(Errc::format, "vocabulary lacks a single-byte token");
  out.push_back(*r);
}

template <class Lookup>
void bpe_merge_scan(std::string_view piece, const Lookup& lookup,
                    std::vector<std::uint32_t>& out) {
  if (piece.size() == 1) {
    emit_segment(lookup, piece, out);
    return;
  }
  struct Part {
    std::size_t start;
    std::uint32_t rank;
  };
  std::vector<Part> parts;
  parts.reserve(piece.size() + 1);
  for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
    parts.push_back({i, rank_or_none(lookup, piece.substr(i, 2))});
  }
  parts.push_back({piece.size() - 1, kNoRank});
  parts.push_back({piece.size(), kNoRank});

  // Rank of the token spanning parts[i] .. parts[i + 3] once parts[i + 1]
  // has been removed.
  auto joined_rank = [&](std::size_t i) {
    if (i + 3 >= parts.size()) return kNoRank;
    return rank_or_none(lookup, piece.substr(parts[i].start, parts[i + 3].start - parts[i].start));
  };

  while (parts.size() > 1) {
    std::uint32_t best = kNoRank;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (parts[i].rank < best) {
        best = parts[i].rank;
        at = i;
      }
    }
    if (best == kNoRank) break;
    parts[at].rank = joined_rank(at);
    if (at > 0) parts[at - 1].rank = joined_rank(at - 1);
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  }

  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    emit_segment(lookup, piece.substr(parts[i].start, parts[i + 1].start - parts[i].start), out);
  }
}

template <class Lookup>
void bpe_merge_heap(std::string_view piece, const Lookup& lookup,
                    std::vector<std::uint32_t>& out) {
  const std::size_t n = piece.size();
  if (n == 1) {
    emit_segment(lookup, piece, out);
    return;
  }
  // Segment k covers [start[k], start[next[k]]); index n is the end sentinel.
  std::vector<std::size_t> start(n + 1), next(n + 1), prev(n + 1);
  std::vector<std::uint32_t> version(n + 1, 0);
  std::vector<bool> alive(n + 1, true);
  for (std::size_t k = 0; k <= n; ++k) {
    start[k] = k;
    next[k] = k + 1;
    prev[k] = k == 0 ? n : k - 1;
  }

  using Entry = std::tuple<std::uint32_t, std::size_t, std::uint32_t>;  // rank, segment, version
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  auto pair_rank = [&](std::size_t k) {
    const std::size_t after = next[k];
    if (after >= n) return kNoRank;
    const std::size_t end = start[next[after]];
    return rank_or_none(lookup, piece.substr(start[k], end - start[k]));
  };
  auto schedule = [&](std::size_t k) {
    ++version[k];
    if (auto r = pair_rank(k); r != kNoRank) heap.emplace(r, k, version[k]);
  };

  for (std::size_t k = 0; k + 1 < n; ++k) schedule(k);

  while (!heap.empty()) {
    auto [rank, k, ver] = heap.top();
    heap.pop();
    if (!alive[k] || ver != version[k]) continue;
    const std::size_t gone = next[k];
    alive[gone] = false;
    next[k] = next[gone];
    prev[next[gone]] = k;
    schedule(k);
    if (k != 0) schedule(prev[k]);
  }

  for (std::size_t k = 0; k < n; k = next[k]) {
    emit_segment(lookup, piece.substr(start[k], start[next[k]] - start[k]), out);
  }
}

}  // namespace lopc::detail
