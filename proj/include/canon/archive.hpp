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

#ifndef INCLUDED_CANON_ARCHIVE_HPP
#define INCLUDED_CANON_ARCHIVE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace canon {

/// Container kind, decided purely by leading magic bytes.
enum class FormatKind { Zip, Tar, Gzip, Opaque };

[[nodiscard]] auto ToString(FormatKind kind) noexcept -> std::string_view;

enum class Compression { Store, Deflate };

struct ExtraField {
    std::uint16_t tag{};
    std::string data;

    auto operator==(ExtraField const&) const -> bool = default;
};

/// One member of a container. Payloads are always held decompressed.
///
/// Absent metadata takes fixed defaults: mtime 0, mode 0, empty owners.
/// `uid`/`gid`/`link_target`/`hard_link` only carry meaning for tar;
/// `extra_fields` and `comment` only for ZIP.
struct Entry {
    std::string path;  // '/'-separated; directories end in '/'
    std::string payload;
    std::int64_t mtime{0};
    std::uint16_t unix_mode{0};
    std::string owner_user;
    std::string owner_group;
    std::uint32_t uid{0};
    std::uint32_t gid{0};
    Compression compression{Compression::Store};
    std::vector<ExtraField> extra_fields;  // ZIP extras other than 0x0001 and 0x5455
    bool is_directory{false};
    std::string link_target;
    bool hard_link{false};
    std::string comment;

    auto operator==(Entry const&) const -> bool = default;
};

struct GzipHeader {
    std::int64_t mtime{0};
    std::uint8_t os{255};
    std::uint8_t xfl{0};
    std::string file_name;
    std::string comment;
    std::string extra;

    auto operator==(GzipHeader const&) const -> bool = default;
};

/// Container-level metadata that does not belong to an entry.
/// Tar padding is not modelled: the writer always pads to 10240-byte records.
struct Trailer {
    std::string zip_comment;
    GzipHeader gzip;

    auto operator==(Trailer const&) const -> bool = default;
};

struct Archive {
    FormatKind format{FormatKind::Opaque};
    std::vector<Entry> entries;
    Trailer trailer;
    /// Parser observations that are not errors, e.g. a local header that
    /// disagrees with the central directory. Not part of equality.
    std::vector<std::string> notes;

    [[nodiscard]] auto operator==(Archive const& other) const -> bool {
        return format == other.format and entries == other.entries and
               trailer == other.trailer;
    }
};

/// Logical name of the single member of a gzip stream without FNAME.
inline constexpr std::string_view kGzipDefaultMember = "content";

[[nodiscard]] auto DetectFormat(std::string_view bytes) noexcept -> FormatKind;

/// Parses ZIP/JAR, ustar/pax tar, or gzip. Throws Error{MalformedArchive}
/// when the bytes cannot be safely modelled; callers then compare them as
/// opaque bytes.
[[nodiscard]] auto ParseArchive(std::string_view bytes) -> Archive;

struct WriteOptions {
    bool allow_zip64{true};
};

/// Deterministic serializer: equal Archive values give equal bytes. Deflate
/// entries are recompressed at one fixed level, so third-party streams are
/// not reproduced bit-for-bit. Throws Error{EntryTooLarge} when ZIP64 would
/// be needed but is disabled, Error{InvalidEntry} for ill-formed entries.
[[nodiscard]] auto WriteArchive(Archive const& archive,
                                WriteOptions const& options = {})
    -> std::string;

}  // namespace canon

#endif  // INCLUDED_CANON_ARCHIVE_HPP
