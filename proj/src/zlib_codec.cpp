// Copyright 2026 The canon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zlib_codec.hpp"

#include <limits>

#include <zlib.h>

#include "canon/error.hpp"

namespace canon::detail {
namespace {

class InflateStream {
  public:
    InflateStream() {
        if (inflateInit2(&zs_, -MAX_WBITS) != Z_OK) {
            throw Error{ErrorCode::MalformedArchive, "inflateInit2 failed"};
        }
    }
    InflateStream(InflateStream const&) = delete;
    auto operator=(InflateStream const&) -> InflateStream& = delete;
    ~InflateStream() { inflateEnd(&zs_); }

    auto Run(std::string_view in, std::size_t* consumed) -> std::string {
        std::string out;
        char buf[65536];
        zs_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
        // Inputs larger than 4 GiB are fed in slices.
        std::size_t fed = 0;
        int rc = Z_OK;
        while (rc != Z_STREAM_END) {
            if (zs_.avail_in == 0) {
                if (fed == in.size()) {
                    throw Error{ErrorCode::MalformedArchive,
                                "truncated deflate stream"};
                }
                auto chunk = std::min<std::size_t>(
                    in.size() - fed, std::numeric_limits<uInt>::max());
                zs_.avail_in = static_cast<uInt>(chunk);
                fed += chunk;
            }
            zs_.next_out = reinterpret_cast<Bytef*>(buf);
            zs_.avail_out = sizeof(buf);
            rc = inflate(&zs_, Z_NO_FLUSH);
            if (rc != Z_OK and rc != Z_STREAM_END) {
                throw Error{ErrorCode::MalformedArchive,
                            "corrupt deflate stream"};
            }
            out.append(buf, sizeof(buf) - zs_.avail_out);
        }
        *consumed = fed - zs_.avail_in;
        return out;
    }

  private:
    z_stream zs_{};
};

}  // namespace

auto Crc32(std::string_view data) noexcept -> std::uint32_t {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t off = 0;
    while (off < data.size()) {
        auto chunk = std::min<std::size_t>(data.size() - off, 1U << 30);
        crc = crc32(crc, reinterpret_cast<Bytef const*>(data.data() + off),
                    static_cast<uInt>(chunk));
        off += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

auto InflateRawPrefix(std::string_view compressed, std::size_t* consumed)
    -> std::string {
    InflateStream stream;
    return stream.Run(compressed, consumed);
}

auto InflateRaw(std::string_view compressed) -> std::string {
    std::size_t consumed = 0;
    auto out = InflateRawPrefix(compressed, &consumed);
    if (consumed != compressed.size()) {
        throw Error{ErrorCode::MalformedArchive,
                    "trailing bytes after deflate stream"};
    }
    return out;
}

auto DeflateRaw(std::string_view data) -> std::string {
    z_stream zs{};
    if (deflateInit2(&zs, kDeflateLevel, Z_DEFLATED, -MAX_WBITS, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error{ErrorCode::InvalidEntry, "deflateInit2 failed"};
    }
    std::string out;
    char buf[65536];
    std::size_t fed = 0;
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        if (zs.avail_in == 0 and fed < data.size()) {
            auto chunk = std::min<std::size_t>(data.size() - fed, 1U << 30);
            zs.next_in =
                reinterpret_cast<Bytef*>(const_cast<char*>(data.data() + fed));
            zs.avail_in = static_cast<uInt>(chunk);
            fed += chunk;
        }
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof(buf);
        rc = deflate(&zs, fed == data.size() ? Z_FINISH : Z_NO_FLUSH);
        if (rc == Z_STREAM_ERROR) {
            deflateEnd(&zs);
            throw Error{ErrorCode::InvalidEntry, "deflate failed"};
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
    }
    deflateEnd(&zs);
    return out;
}

}  // namespace canon::detail
