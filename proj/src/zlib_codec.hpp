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

#ifndef INCLUDED_CANON_SRC_ZLIB_CODEC_HPP
#define INCLUDED_CANON_SRC_ZLIB_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace canon::detail {

/// Effort used for every deflate stream this library writes.
inline constexpr int kDeflateLevel = 6;

[[nodiscard]] auto Crc32(std::string_view data) noexcept -> std::uint32_t;

/// Inflates a raw (headerless) deflate stream that must end exactly at the
/// end of input. Throws MalformedArchive on corrupt data.
[[nodiscard]] auto InflateRaw(std::string_view compressed) -> std::string;

/// Inflates a raw deflate stream starting at the front of input and reports
/// how many input bytes it consumed. Used for gzip members.
[[nodiscard]] auto InflateRawPrefix(std::string_view compressed,
                                    std::size_t* consumed) -> std::string;

[[nodiscard]] auto DeflateRaw(std::string_view data) -> std::string;

}  // namespace canon::detail

#endif  // INCLUDED_CANON_SRC_ZLIB_CODEC_HPP
