// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lopc/codec.hpp"

#include <zstd.h>

#include <memory>
#include <string>

#include "lopc/error.hpp"

namespace lopc {
namespace {

// Frames declaring more than this are decoded by streaming instead of a
// single up-front allocation.
constexpr unsigned long long kMaxPreallocate = 1ull << 30;

struct CCtxDeleter {
  void operator()(ZSTD_CCtx* c) const noexcept { ZSTD_freeCCtx(c); }
};
struct DCtxDeleter {
  void operator()(ZSTD_DCtx* d) const noexcept { ZSTD_freeDCtx(d); }
};

ZSTD_CCtx* thread_cctx() {
  thread_local std::unique_ptr<ZSTD_CCtx, CCtxDeleter> ctx(ZSTD_createCCtx());
  if (!ctx) throw Error(Errc::codec, "cannot allocate compression context");
  return ctx.get();
}

ZSTD_DCtx* thread_dctx() {
  thread_local std::unique_ptr<ZSTD_DCtx, DCtxDeleter> ctx(ZSTD_createDCtx());
  if (!ctx) throw Error(Errc::codec, "cannot allocate decompression context");
  return ctx.get();
}

void check(std::size_t rc) {
  if (ZSTD_isError(rc)) throw Error(Errc::codec, ZSTD_getErrorName(rc));
}

Bytes stream_decompress(ZSTD_DCtx* dctx, std::span<const std::uint8_t> frame) {
  Bytes out;
  Bytes chunk(ZSTD_DStreamOutSize());
  ZSTD_inBuffer in{frame.data(), frame.size(), 0};
  for (;;) {
    ZSTD_outBuffer buf{chunk.data(), chunk.size(), 0};
    const std::size_t rc = ZSTD_decompressStream(dctx, &buf, &in);
    check(rc);
    out.insert(out.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(buf.pos));
    // rc == 0 marks a fully decoded and verified frame.
    if (rc == 0) return out;
    if (in.pos == in.size && buf.pos < buf.size) throw Error(Errc::codec, "truncated frame");
  }
}

}  // namespace

void CodecOptions::validate() const {
  if (level < kMinLevel || level > kMaxLevel) {
    throw Error(Errc::configuration,
                "zstd level " + std::to_string(level) + " outside [1, 22]");
  }
}

std::optional<int> level_for_tier(std::string_view tier) noexcept {
  if (tier == "fast") return 3;
  if (tier == "balanced") return 15;
  if (tier == "max") return 19;
  return std::nullopt;
}

Bytes byte_compress(std::span<const std::uint8_t> data, const CodecOptions& options) {
  options.validate();
  ZSTD_CCtx* cctx = thread_cctx();
  check(ZSTD_CCtx_reset(cctx, ZSTD_reset_session_and_parameters));
  check(ZSTD_CCtx_setParameter(cctx, ZSTD_c_compressionLevel, options.level));
  check(ZSTD_CCtx_setParameter(cctx, ZSTD_c_contentSizeFlag, 1));
  check(ZSTD_CCtx_setParameter(cctx, ZSTD_c_checksumFlag, 1));
  Bytes out(ZSTD_compressBound(data.size()));
  const std::size_t n =
      ZSTD_compress2(cctx, out.data(), out.size(), data.data(), data.size());
  check(n);
  out.resize(n);
  return out;
}

Bytes byte_decompress(std::span<const std::uint8_t> frame) {
  if (frame.empty()) throw Error(Errc::codec, "empty input");
  const std::size_t frame_size = ZSTD_findFrameCompressedSize(frame.data(), frame.size());
  check(frame_size);
  if (frame_size != frame.size()) {
    throw Error(Errc::codec, "trailing bytes after frame");
  }
  ZSTD_DCtx* dctx = thread_dctx();
  check(ZSTD_DCtx_reset(dctx, ZSTD_reset_session_and_parameters));

  const unsigned long long declared = ZSTD_getFrameContentSize(frame.data(), frame.size());
  if (declared == ZSTD_CONTENTSIZE_ERROR) throw Error(Errc::codec, "not a zstd frame");
  if (declared == ZSTD_CONTENTSIZE_UNKNOWN || declared > kMaxPreallocate) {
    return stream_decompress(dctx, frame);
  }
  Bytes out(static_cast<std::size_t>(declared));
  const std::size_t n =
      ZSTD_decompressDCtx(dctx, out.data(), out.size(), frame.data(), frame.size());
  check(n);
  if (n != out.size()) throw Error(Errc::codec, "content size mismatch");
  return out;
}

}  // namespace lopc
