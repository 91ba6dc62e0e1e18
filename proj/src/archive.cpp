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

#include "canon/archive.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "canon/binary.hpp"
#include "canon/error.hpp"
#include "zlib_codec.hpp"

namespace canon {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kEocd64Sig = 0x06064b50;
constexpr std::uint32_t kEocd64LocatorSig = 0x07064b50;
constexpr std::uint16_t kZip64ExtraTag = 0x0001;
constexpr std::uint16_t kExtTimeExtraTag = 0x5455;
constexpr std::uint16_t kUnixHost = 3;
constexpr std::size_t kTarBlock = 512;
constexpr std::size_t kTarRecord = 10240;

[[noreturn]] void Malformed(std::string const& what) {
    throw Error{ErrorCode::MalformedArchive, what};
}

// ---------------------------------------------------------------------------
// Civil time helpers (UTC, proleptic Gregorian).

auto DaysFromCivil(std::int64_t y, unsigned m, unsigned d) -> std::int64_t {
    y -= m <= 2 ? 1 : 0;
    auto const era = (y >= 0 ? y : y - 399) / 400;
    auto const yoe = static_cast<unsigned>(y - era * 400);
    auto const doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    auto const doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

auto CivilFromDays(std::int64_t z) -> Civil {
    z += 719468;
    auto const era = (z >= 0 ? z : z - 146096) / 146097;
    auto const doe = static_cast<unsigned>(z - era * 146097);
    auto const yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    auto const y = static_cast<std::int64_t>(yoe) + era * 400;
    auto const doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    auto const mp = (5 * doy + 2) / 153;
    auto const d = doy - (153 * mp + 2) / 5 + 1;
    auto const m = mp < 10 ? mp + 3 : mp - 9;
    return {y + (m <= 2 ? 1 : 0), m, d};
}

auto DosToUnix(std::uint16_t time, std::uint16_t date) -> std::int64_t {
    auto year = 1980 + (date >> 9);
    auto month = std::clamp<unsigned>((date >> 5) & 0x0F, 1, 12);
    auto day = std::max<unsigned>(date & 0x1F, 1);
    auto days = DaysFromCivil(year, month, day);
    auto secs = static_cast<std::int64_t>((time >> 11) & 0x1F) * 3600 +
                static_cast<std::int64_t>((time >> 5) & 0x3F) * 60 +
                static_cast<std::int64_t>(time & 0x1F) * 2;
    return days * 86400 + secs;
}

/// DOS date/time, clamped to the representable 1980..2107 range.
auto UnixToDos(std::int64_t t) -> std::pair<std::uint16_t, std::uint16_t> {
    constexpr std::int64_t kMin = 315532800;  // 1980-01-01T00:00:00Z
    t = std::max(t, kMin);
    auto days = t / 86400;
    auto secs = t % 86400;
    auto civil = CivilFromDays(days);
    if (civil.year > 2107) {
        return {static_cast<std::uint16_t>((23 << 11) | (59 << 5) | 29),
                static_cast<std::uint16_t>((127 << 9) | (12 << 5) | 31)};
    }
    auto time = static_cast<std::uint16_t>(((secs / 3600) << 11) |
                                           (((secs / 60) % 60) << 5) |
                                           ((secs % 60) / 2));
    auto date = static_cast<std::uint16_t>(((civil.year - 1980) << 9) |
                                           (civil.month << 5) | civil.day);
    return {time, date};
}

auto NormalizeZipPath(std::string_view raw) -> std::string {
    std::string path{raw};
    std::replace(path.begin(), path.end(), '\\', '/');
    return path;
}

// ---------------------------------------------------------------------------
// ZIP

struct CentralRecord {
    std::uint16_t version_made_by{};
    std::uint16_t flags{};
    std::uint16_t method{};
    std::uint16_t dos_time{};
    std::uint16_t dos_date{};
    std::uint32_t crc{};
    std::uint64_t compressed_size{};
    std::uint64_t uncompressed_size{};
    std::uint64_t local_offset{};
    std::uint32_t external_attrs{};
    std::string name;
    std::string extra;
    std::string comment;
};

auto SplitExtra(std::string_view extra) -> std::vector<ExtraField> {
    std::vector<ExtraField> fields;
    ByteReader r{extra, ErrorCode::MalformedArchive};
    while (r.remaining() >= 4) {
        ExtraField f;
        f.tag = r.u16le();
        auto len = r.u16le();
        f.data = std::string{r.bytes(len)};
        fields.push_back(std::move(f));
    }
    // Some producers pad extras with fewer than four stray bytes; tolerated.
    return fields;
}

void ApplyZip64Extra(std::vector<ExtraField> const& fields,
                     CentralRecord* rec) {
    for (auto const& f : fields) {
        if (f.tag != kZip64ExtraTag) {
            continue;
        }
        ByteReader r{f.data, ErrorCode::MalformedArchive};
        if (rec->uncompressed_size == 0xFFFFFFFF) {
            rec->uncompressed_size = r.u64le();
        }
        if (rec->compressed_size == 0xFFFFFFFF) {
            rec->compressed_size = r.u64le();
        }
        if (rec->local_offset == 0xFFFFFFFF) {
            rec->local_offset = r.u64le();
        }
        return;
    }
}

auto ParseZip(std::string_view bytes) -> Archive {
    Archive archive;
    archive.format = FormatKind::Zip;
    if (bytes.size() < 22) {
        Malformed("ZIP shorter than an end-of-central-directory record");
    }
    // Locate the EOCD record: the last signature whose comment length
    // accounts exactly for the remaining bytes.
    std::optional<std::size_t> eocd;
    auto const lowest =
        bytes.size() > 22 + 0xFFFF ? bytes.size() - 22 - 0xFFFF : 0;
    for (auto pos = bytes.size() - 22 + 1; pos-- > lowest;) {
        ByteReader r{bytes, ErrorCode::MalformedArchive};
        r.seek(pos);
        if (r.u32le() != kEocdSig) {
            continue;
        }
        r.seek(pos + 20);
        auto comment_len = r.u16le();
        if (pos + 22 + comment_len == bytes.size()) {
            eocd = pos;
            break;
        }
    }
    if (not eocd) {
        Malformed("end-of-central-directory record not found");
    }

    ByteReader r{bytes, ErrorCode::MalformedArchive};
    r.seek(*eocd + 4);
    auto disk = r.u16le();
    auto cd_disk = r.u16le();
    std::uint64_t count_disk = r.u16le();
    std::uint64_t count = r.u16le();
    std::uint64_t cd_size = r.u32le();
    std::uint64_t cd_offset = r.u32le();
    auto comment_len = r.u16le();
    archive.trailer.zip_comment = std::string{r.bytes(comment_len)};
    if (disk != 0 or cd_disk != 0 or count_disk != count) {
        Malformed("multi-volume archives are not supported");
    }

    if (*eocd >= 20) {
        ByteReader loc{bytes, ErrorCode::MalformedArchive};
        loc.seek(*eocd - 20);
        if (loc.u32le() == kEocd64LocatorSig) {
            loc.skip(4);
            auto eocd64_offset = loc.u64le();
            ByteReader e64{bytes, ErrorCode::MalformedArchive};
            e64.seek(eocd64_offset);
            if (e64.u32le() != kEocd64Sig) {
                Malformed("bad ZIP64 end-of-central-directory signature");
            }
            e64.skip(8 + 2 + 2 + 4 + 4);
            e64.skip(8);  // entries on this disk
            count = e64.u64le();
            cd_size = e64.u64le();
            cd_offset = e64.u64le();
        }
    }
    if (cd_offset > bytes.size() or cd_size > bytes.size() - cd_offset) {
        Malformed("central directory out of bounds");
    }

    std::vector<CentralRecord> records;
    ByteReader cd{bytes.substr(cd_offset, cd_size),
                  ErrorCode::MalformedArchive};
    for (std::uint64_t i = 0; i < count; ++i) {
        if (cd.u32le() != kCentralHeaderSig) {
            Malformed("truncated central directory");
        }
        CentralRecord rec;
        rec.version_made_by = cd.u16le();
        cd.skip(2);  // version needed
        rec.flags = cd.u16le();
        rec.method = cd.u16le();
        rec.dos_time = cd.u16le();
        rec.dos_date = cd.u16le();
        rec.crc = cd.u32le();
        rec.compressed_size = cd.u32le();
        rec.uncompressed_size = cd.u32le();
        auto name_len = cd.u16le();
        auto extra_len = cd.u16le();
        auto entry_comment_len = cd.u16le();
        cd.skip(2 + 2);  // disk start, internal attributes
        rec.external_attrs = cd.u32le();
        rec.local_offset = cd.u32le();
        rec.name = std::string{cd.bytes(name_len)};
        rec.extra = std::string{cd.bytes(extra_len)};
        rec.comment = std::string{cd.bytes(entry_comment_len)};
        records.push_back(std::move(rec));
    }

    std::set<std::string> seen;
    for (auto& rec : records) {
        auto fields = SplitExtra(rec.extra);
        ApplyZip64Extra(fields, &rec);
        if ((rec.flags & 0x0001) != 0) {
            Malformed("encrypted entry: " + rec.name);
        }
        if (rec.method != 0 and rec.method != 8) {
            Malformed("unsupported compression method " +
                      std::to_string(rec.method) + ": " + rec.name);
        }

        ByteReader lh{bytes, ErrorCode::MalformedArchive};
        lh.seek(rec.local_offset);
        if (lh.u32le() != kLocalHeaderSig) {
            Malformed("bad local header signature: " + rec.name);
        }
        lh.skip(2);
        auto local_flags = lh.u16le();
        auto local_method = lh.u16le();
        lh.skip(4);
        auto local_crc = lh.u32le();
        std::uint64_t local_csize = lh.u32le();
        std::uint64_t local_usize = lh.u32le();
        auto local_name_len = lh.u16le();
        auto local_extra_len = lh.u16le();
        auto local_name = lh.bytes(local_name_len);
        lh.skip(local_extra_len);
        auto data = lh.bytes(rec.compressed_size);

        if (local_name != rec.name or local_method != rec.method) {
            archive.notes.push_back("local header disagrees with central "
                                    "directory: " +
                                    rec.name);
        }
        else if ((local_flags & 0x0008) == 0 and
                 (local_crc != rec.crc or
                  (local_csize != rec.compressed_size and
                   local_csize != 0xFFFFFFFF) or
                  (local_usize != rec.uncompressed_size and
                   local_usize != 0xFFFFFFFF))) {
            archive.notes.push_back("local header sizes/CRC disagree with "
                                    "central directory: " +
                                    rec.name);
        }

        Entry entry;
        entry.path = NormalizeZipPath(rec.name);
        entry.is_directory = not entry.path.empty() and entry.path.back() == '/';
        entry.compression =
            rec.method == 8 ? Compression::Deflate : Compression::Store;
        entry.payload = rec.method == 8 ? detail::InflateRaw(data)
                                        : std::string{data};
        if (entry.payload.size() != rec.uncompressed_size) {
            Malformed("uncompressed size mismatch: " + rec.name);
        }
        if (detail::Crc32(entry.payload) != rec.crc) {
            Malformed("bad CRC: " + rec.name);
        }
        if (entry.is_directory and not entry.payload.empty()) {
            Malformed("directory entry with data: " + rec.name);
        }
        if ((rec.version_made_by >> 8) == kUnixHost) {
            entry.unix_mode =
                static_cast<std::uint16_t>(rec.external_attrs >> 16);
        }
        entry.mtime = DosToUnix(rec.dos_time, rec.dos_date);
        for (auto& f : fields) {
            if (f.tag == kZip64ExtraTag) {
                continue;
            }
            if (f.tag == kExtTimeExtraTag) {
                if (f.data.size() >= 5 and (f.data[0] & 0x01) != 0) {
                    ByteReader t{f.data, ErrorCode::MalformedArchive};
                    t.skip(1);
                    entry.mtime = t.u32le();
                }
                continue;
            }
            entry.extra_fields.push_back(std::move(f));
        }
        entry.comment = rec.comment;
        if (not seen.insert(entry.path).second) {
            Malformed("duplicate entry path: " + entry.path);
        }
        archive.entries.push_back(std::move(entry));
    }
    return archive;
}

void PutExtra(std::string* out, std::uint16_t tag, std::string_view data) {
    PutU16le(out, tag);
    PutU16le(out, static_cast<std::uint16_t>(data.size()));
    out->append(data);
}

void CheckEntry(Entry const& e) {
    if (e.path.empty()) {
        throw Error{ErrorCode::InvalidEntry, "empty entry path"};
    }
    if (e.path.find('\\') != std::string::npos) {
        throw Error{ErrorCode::InvalidEntry, "backslash in path: " + e.path};
    }
    if (e.is_directory != (e.path.back() == '/')) {
        throw Error{ErrorCode::InvalidEntry,
                    "directory flag and trailing slash disagree: " + e.path};
    }
    if (e.is_directory and not e.payload.empty()) {
        throw Error{ErrorCode::InvalidEntry,
                    "directory entry with payload: " + e.path};
    }
}

void CheckUniquePaths(std::vector<Entry> const& entries) {
    std::set<std::string_view> seen;
    for (auto const& e : entries) {
        if (not seen.insert(e.path).second) {
            throw Error{ErrorCode::InvalidEntry, "duplicate path: " + e.path};
        }
    }
}

auto WriteZip(Archive const& archive, WriteOptions const& options)
    -> std::string {
    constexpr std::uint64_t k32 = 0xFFFFFFFF;
    CheckUniquePaths(archive.entries);
    std::string out;
    std::string central;
    bool any_zip64 = archive.entries.size() >= 0xFFFF;

    for (auto const& e : archive.entries) {
        CheckEntry(e);
        if (e.mtime < 0 or e.mtime > static_cast<std::int64_t>(k32)) {
            throw Error{ErrorCode::InvalidEntry,
                        "mtime not representable in ZIP: " + e.path};
        }
        if (e.path.size() > 0xFFFF or e.comment.size() > 0xFFFF) {
            throw Error{ErrorCode::InvalidEntry, "name too long: " + e.path};
        }
        bool const deflate =
            e.compression == Compression::Deflate and not e.is_directory;
        auto const data = deflate ? detail::DeflateRaw(e.payload) : e.payload;
        auto const crc = detail::Crc32(e.payload);
        std::uint64_t const usize = e.payload.size();
        std::uint64_t const csize = data.size();
        std::uint64_t const offset = out.size();
        bool const sizes64 = usize >= k32 or csize >= k32;
        bool const offset64 = offset >= k32;
        bool const entry64 = sizes64 or offset64;
        any_zip64 = any_zip64 or entry64;
        if (entry64 and not options.allow_zip64) {
            throw Error{ErrorCode::EntryTooLarge,
                        "entry needs ZIP64: " + e.path};
        }
        auto const [dos_time, dos_date] = UnixToDos(e.mtime);
        std::uint16_t flags = 0;
        if (std::any_of(e.path.begin(), e.path.end(),
                        [](char c) { return (c & 0x80) != 0; })) {
            flags |= 0x0800;
        }
        std::uint16_t const version = entry64 ? 45 : 20;

        std::string ext_time;
        PutU8(&ext_time, 0x01);
        PutU32le(&ext_time, static_cast<std::uint32_t>(e.mtime));

        std::string user_extra;
        for (auto const& f : e.extra_fields) {
            if (f.data.size() > 0xFFFF) {
                throw Error{ErrorCode::InvalidEntry,
                            "extra field too large: " + e.path};
            }
            PutExtra(&user_extra, f.tag, f.data);
        }

        std::string local_extra;
        if (sizes64) {
            std::string z;
            PutU64le(&z, usize);
            PutU64le(&z, csize);
            PutExtra(&local_extra, kZip64ExtraTag, z);
        }
        PutExtra(&local_extra, kExtTimeExtraTag, ext_time);
        local_extra += user_extra;

        PutU32le(&out, kLocalHeaderSig);
        PutU16le(&out, version);
        PutU16le(&out, flags);
        PutU16le(&out, deflate ? 8 : 0);
        PutU16le(&out, dos_time);
        PutU16le(&out, dos_date);
        PutU32le(&out, crc);
        PutU32le(&out, sizes64 ? 0xFFFFFFFF : static_cast<std::uint32_t>(csize));
        PutU32le(&out, sizes64 ? 0xFFFFFFFF : static_cast<std::uint32_t>(usize));
        PutU16le(&out, static_cast<std::uint16_t>(e.path.size()));
        PutU16le(&out, static_cast<std::uint16_t>(local_extra.size()));
        out += e.path;
        out += local_extra;
        out += data;

        std::string central_extra;
        if (entry64) {
            std::string z;
            if (usize >= k32) {
                PutU64le(&z, usize);
            }
            if (csize >= k32) {
                PutU64le(&z, csize);
            }
            if (offset64) {
                PutU64le(&z, offset);
            }
            PutExtra(&central_extra, kZip64ExtraTag, z);
        }
        PutExtra(&central_extra, kExtTimeExtraTag, ext_time);
        central_extra += user_extra;
        if (central_extra.size() > 0xFFFF) {
            throw Error{ErrorCode::InvalidEntry, "extra too large: " + e.path};
        }

        PutU32le(&central, kCentralHeaderSig);
        PutU16le(&central, static_cast<std::uint16_t>((kUnixHost << 8) | version));
        PutU16le(&central, version);
        PutU16le(&central, flags);
        PutU16le(&central, deflate ? 8 : 0);
        PutU16le(&central, dos_time);
        PutU16le(&central, dos_date);
        PutU32le(&central, crc);
        PutU32le(&central, csize >= k32 ? 0xFFFFFFFF : static_cast<std::uint32_t>(csize));
        PutU32le(&central, usize >= k32 ? 0xFFFFFFFF : static_cast<std::uint32_t>(usize));
        PutU16le(&central, static_cast<std::uint16_t>(e.path.size()));
        PutU16le(&central, static_cast<std::uint16_t>(central_extra.size()));
        PutU16le(&central, static_cast<std::uint16_t>(e.comment.size()));
        PutU16le(&central, 0);
        PutU16le(&central, 0);
        PutU32le(&central, (static_cast<std::uint32_t>(e.unix_mode) << 16) |
                               (e.is_directory ? 0x10U : 0U));
        PutU32le(&central, offset64 ? 0xFFFFFFFF : static_cast<std::uint32_t>(offset));
        central += e.path;
        central += central_extra;
        central += e.comment;
    }

    std::uint64_t const cd_offset = out.size();
    std::uint64_t const cd_size = central.size();
    std::uint64_t const count = archive.entries.size();
    out += central;
    any_zip64 = any_zip64 or cd_offset >= k32 or cd_size >= k32;
    if (any_zip64 and not options.allow_zip64) {
        throw Error{ErrorCode::EntryTooLarge, "archive needs ZIP64"};
    }
    if (archive.trailer.zip_comment.size() > 0xFFFF) {
        throw Error{ErrorCode::InvalidEntry, "archive comment too long"};
    }
    if (any_zip64) {
        std::uint64_t const eocd64_offset = out.size();
        PutU32le(&out, kEocd64Sig);
        PutU64le(&out, 44);
        PutU16le(&out, (kUnixHost << 8) | 45);
        PutU16le(&out, 45);
        PutU32le(&out, 0);
        PutU32le(&out, 0);
        PutU64le(&out, count);
        PutU64le(&out, count);
        PutU64le(&out, cd_size);
        PutU64le(&out, cd_offset);
        PutU32le(&out, kEocd64LocatorSig);
        PutU32le(&out, 0);
        PutU64le(&out, eocd64_offset);
        PutU32le(&out, 1);
    }
    PutU32le(&out, kEocdSig);
    PutU16le(&out, 0);
    PutU16le(&out, 0);
    auto const count16 = any_zip64 ? std::uint16_t{0xFFFF}
                                   : static_cast<std::uint16_t>(count);
    PutU16le(&out, count16);
    PutU16le(&out, count16);
    PutU32le(&out, any_zip64 ? 0xFFFFFFFF : static_cast<std::uint32_t>(cd_size));
    PutU32le(&out, any_zip64 ? 0xFFFFFFFF : static_cast<std::uint32_t>(cd_offset));
    PutU16le(&out, static_cast<std::uint16_t>(archive.trailer.zip_comment.size()));
    out += archive.trailer.zip_comment;
    return out;
}

// ---------------------------------------------------------------------------
// tar

auto ParseTarNumber(std::string_view field) -> std::uint64_t {
    if (not field.empty() and (static_cast<std::uint8_t>(field[0]) & 0x80)) {
        // GNU base-256, positive values only.
        if ((static_cast<std::uint8_t>(field[0]) & 0x40) != 0) {
            Malformed("negative base-256 number in tar header");
        }
        std::uint64_t v = static_cast<std::uint8_t>(field[0]) & 0x3F;
        for (std::size_t i = 1; i < field.size(); ++i) {
            if (v >> 56) {
                Malformed("base-256 number overflow in tar header");
            }
            v = (v << 8) | static_cast<std::uint8_t>(field[i]);
        }
        return v;
    }
    std::uint64_t v = 0;
    std::size_t i = 0;
    while (i < field.size() and (field[i] == ' ' or field[i] == '\0')) {
        ++i;
    }
    for (; i < field.size(); ++i) {
        auto c = field[i];
        if (c == ' ' or c == '\0') {
            break;
        }
        if (c < '0' or c > '7') {
            Malformed("invalid octal digit in tar header");
        }
        v = (v << 3) | static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

auto CString(std::string_view field) -> std::string {
    auto nul = field.find('\0');
    return std::string{nul == std::string_view::npos ? field
                                                      : field.substr(0, nul)};
}

auto ParsePaxRecords(std::string_view data)
    -> std::map<std::string, std::string> {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < data.size()) {
        if (data[pos] == '\0') {
            break;
        }
        auto space = data.find(' ', pos);
        if (space == std::string_view::npos) {
            Malformed("bad pax record");
        }
        std::size_t len = 0;
        for (auto i = pos; i < space; ++i) {
            if (data[i] < '0' or data[i] > '9') {
                Malformed("bad pax record length");
            }
            len = len * 10 + static_cast<std::size_t>(data[i] - '0');
        }
        if (len == 0 or pos + len > data.size() or
            data[pos + len - 1] != '\n') {
            Malformed("bad pax record length");
        }
        auto record = data.substr(space + 1, pos + len - 1 - (space + 1));
        auto eq = record.find('=');
        if (eq == std::string_view::npos) {
            Malformed("pax record without '='");
        }
        out[std::string{record.substr(0, eq)}] =
            std::string{record.substr(eq + 1)};
        pos += len;
    }
    return out;
}

auto ParsePaxInteger(std::string const& value) -> std::int64_t {
    // mtime may carry a fractional part; it is truncated.
    std::int64_t v = 0;
    std::size_t i = 0;
    bool neg = false;
    if (i < value.size() and value[i] == '-') {
        neg = true;
        ++i;
    }
    if (i == value.size() or value[i] < '0' or value[i] > '9') {
        Malformed("bad pax number: " + value);
    }
    for (; i < value.size() and value[i] >= '0' and value[i] <= '9'; ++i) {
        v = v * 10 + (value[i] - '0');
    }
    return neg ? -v : v;
}

auto ParseTar(std::string_view bytes) -> Archive {
    Archive archive;
    archive.format = FormatKind::Tar;
    ByteReader r{bytes, ErrorCode::MalformedArchive};
    std::map<std::string, std::string> global_pax;
    std::map<std::string, std::string> local_pax;
    std::optional<std::string> long_name;
    std::optional<std::string> long_link;
    std::set<std::string> seen;

    while (r.remaining() >= kTarBlock) {
        auto header = r.bytes(kTarBlock);
        if (std::all_of(header.begin(), header.end(),
                        [](char c) { return c == '\0'; })) {
            break;
        }
        auto stored_sum = ParseTarNumber(header.substr(148, 8));
        std::uint64_t usum = 0;
        std::int64_t ssum = 0;
        for (std::size_t i = 0; i < kTarBlock; ++i) {
            auto c = (i >= 148 and i < 156) ? ' ' : header[i];
            usum += static_cast<std::uint8_t>(c);
            ssum += static_cast<signed char>(c);
        }
        if (stored_sum != usum and
            static_cast<std::int64_t>(stored_sum) != ssum) {
            Malformed("bad tar header checksum");
        }

        auto const typeflag = header[156];
        auto const size = ParseTarNumber(header.substr(124, 12));
        auto data = r.bytes(size);
        auto const padding = (kTarBlock - size % kTarBlock) % kTarBlock;
        r.skip(std::min<std::size_t>(padding, r.remaining()));

        if (typeflag == 'x') {
            for (auto& [k, v] : ParsePaxRecords(data)) {
                local_pax[k] = v;
            }
            continue;
        }
        if (typeflag == 'g') {
            for (auto& [k, v] : ParsePaxRecords(data)) {
                global_pax[k] = v;
            }
            continue;
        }
        if (typeflag == 'L') {
            long_name = CString(data);
            continue;
        }
        if (typeflag == 'K') {
            long_link = CString(data);
            continue;
        }

        auto pax = global_pax;
        for (auto& [k, v] : local_pax) {
            pax[k] = v;
        }
        local_pax.clear();

        Entry entry;
        auto const magic = header.substr(257, 6);
        auto name = CString(header.substr(0, 100));
        if (magic == std::string_view{"ustar\0", 6}) {
            auto prefix = CString(header.substr(345, 155));
            if (not prefix.empty()) {
                name = prefix + "/" + name;
            }
        }
        if (long_name) {
            name = *long_name;
            long_name.reset();
        }
        if (auto it = pax.find("path"); it != pax.end()) {
            name = it->second;
        }
        entry.link_target = CString(header.substr(157, 100));
        if (long_link) {
            entry.link_target = *long_link;
            long_link.reset();
        }
        if (auto it = pax.find("linkpath"); it != pax.end()) {
            entry.link_target = it->second;
        }
        entry.unix_mode =
            static_cast<std::uint16_t>(ParseTarNumber(header.substr(100, 8)));
        entry.uid =
            static_cast<std::uint32_t>(ParseTarNumber(header.substr(108, 8)));
        entry.gid =
            static_cast<std::uint32_t>(ParseTarNumber(header.substr(116, 8)));
        entry.mtime =
            static_cast<std::int64_t>(ParseTarNumber(header.substr(136, 12)));
        entry.owner_user = CString(header.substr(265, 32));
        entry.owner_group = CString(header.substr(297, 32));
        if (auto it = pax.find("uid"); it != pax.end()) {
            entry.uid = static_cast<std::uint32_t>(ParsePaxInteger(it->second));
        }
        if (auto it = pax.find("gid"); it != pax.end()) {
            entry.gid = static_cast<std::uint32_t>(ParsePaxInteger(it->second));
        }
        if (auto it = pax.find("mtime"); it != pax.end()) {
            entry.mtime = ParsePaxInteger(it->second);
        }
        if (auto it = pax.find("uname"); it != pax.end()) {
            entry.owner_user = it->second;
        }
        if (auto it = pax.find("gname"); it != pax.end()) {
            entry.owner_group = it->second;
        }
        if (auto it = pax.find("size"); it != pax.end()) {
            // Size overrides through pax are not modelled.
            auto pax_size = static_cast<std::size_t>(ParsePaxInteger(it->second));
            if (pax_size != size) {
                Malformed("pax size override is not supported");
            }
        }

        switch (typeflag) {
            case '0':
            case '\0':
            case '7':
                entry.payload = std::string{data};
                break;
            case '5':
                entry.is_directory = true;
                if (name.empty() or name.back() != '/') {
                    name += '/';
                }
                break;
            case '2':
                break;
            case '1':
                entry.hard_link = true;
                break;
            default:
                Malformed(std::string{"unsupported tar entry type '"} +
                          typeflag + "'");
        }
        if (not entry.is_directory and not name.empty() and
            name.back() == '/') {
            entry.is_directory = true;
            entry.payload.clear();
        }
        if (name.empty()) {
            Malformed("tar entry with empty name");
        }
        entry.path = std::move(name);
        entry.compression = Compression::Store;
        if (not seen.insert(entry.path).second) {
            Malformed("duplicate entry path: " + entry.path);
        }
        archive.entries.push_back(std::move(entry));
    }
    return archive;
}

void PutOctal(std::string* block, std::size_t at, std::size_t width,
              std::uint64_t value) {
    // width includes the terminating NUL.
    std::string digits(width - 1, '0');
    for (auto i = width - 1; i-- > 0;) {
        digits[i] = static_cast<char>('0' + (value & 7));
        value >>= 3;
    }
    block->replace(at, width - 1, digits);
    (*block)[at + width - 1] = '\0';
}

auto FitsOctal(std::uint64_t value, std::size_t digits) -> bool {
    return digits >= 22 or value < (std::uint64_t{1} << (3 * digits));
}

void PutField(std::string* block, std::size_t at, std::size_t width,
              std::string_view value) {
    value = value.substr(0, width);
    block->replace(at, value.size(), value);
}

auto PaxRecord(std::string_view key, std::string_view value) -> std::string {
    // The length prefix counts itself.
    auto body = std::string{" "} + std::string{key} + "=" +
                std::string{value} + "\n";
    auto len = body.size() + 1;
    while (std::to_string(len).size() + body.size() != len) {
        ++len;
    }
    return std::to_string(len) + body;
}

auto TarHeader(std::string_view name, std::string_view link, char typeflag,
               std::uint64_t mode, std::uint64_t uid, std::uint64_t gid,
               std::uint64_t size, std::uint64_t mtime,
               std::string_view uname, std::string_view gname,
               std::string_view prefix) -> std::string {
    std::string block(kTarBlock, '\0');
    PutField(&block, 0, 100, name);
    PutOctal(&block, 100, 8, mode);
    PutOctal(&block, 108, 8, uid);
    PutOctal(&block, 116, 8, gid);
    PutOctal(&block, 124, 12, size);
    PutOctal(&block, 136, 12, mtime);
    block[156] = typeflag;
    PutField(&block, 157, 100, link);
    PutField(&block, 257, 6, std::string_view{"ustar\0", 6});
    PutField(&block, 263, 2, "00");
    PutField(&block, 265, 32, uname);
    PutField(&block, 297, 32, gname);
    PutOctal(&block, 329, 8, 0);
    PutOctal(&block, 337, 8, 0);
    PutField(&block, 345, 155, prefix);
    block.replace(148, 8, "        ");
    std::uint64_t sum = 0;
    for (auto c : block) {
        sum += static_cast<std::uint8_t>(c);
    }
    std::string chk(6, '0');
    for (auto i = 6; i-- > 0;) {
        chk[static_cast<std::size_t>(i)] = static_cast<char>('0' + (sum & 7));
        sum >>= 3;
    }
    block.replace(148, 6, chk);
    block[154] = '\0';
    block[155] = ' ';
    return block;
}

auto SplitUstarName(std::string_view path)
    -> std::optional<std::pair<std::string, std::string>> {
    if (path.size() <= 100) {
        return std::pair{std::string{}, std::string{path}};
    }
    // Split at a '/' so that prefix <= 155 and name <= 100 bytes.
    for (auto pos = path.find('/'); pos != std::string_view::npos;
         pos = path.find('/', pos + 1)) {
        auto prefix = path.substr(0, pos);
        auto name = path.substr(pos + 1);
        if (prefix.size() <= 155 and name.size() <= 100 and
            not name.empty()) {
            return std::pair{std::string{prefix}, std::string{name}};
        }
    }
    return std::nullopt;
}

auto PadTo(std::string* out, std::size_t multiple) {
    auto rem = out->size() % multiple;
    if (rem != 0) {
        out->append(multiple - rem, '\0');
    }
}

auto WriteTar(Archive const& archive) -> std::string {
    CheckUniquePaths(archive.entries);
    std::string out;
    for (auto const& e : archive.entries) {
        CheckEntry(e);
        char typeflag = '0';
        if (e.is_directory) {
            typeflag = '5';
        }
        else if (not e.link_target.empty()) {
            typeflag = e.hard_link ? '1' : '2';
        }
        if (typeflag != '0' and not e.payload.empty()) {
            throw Error{ErrorCode::InvalidEntry,
                        "link or directory with payload: " + e.path};
        }
        std::map<std::string, std::string> pax;
        auto split = SplitUstarName(e.path);
        if (not split) {
            pax["path"] = e.path;
            split = std::pair{std::string{}, e.path.substr(0, 100)};
        }
        std::string link = e.link_target;
        if (link.size() > 100) {
            pax["linkpath"] = link;
            link.resize(100);
        }
        std::uint64_t mtime = 0;
        if (e.mtime < 0 or not FitsOctal(static_cast<std::uint64_t>(e.mtime), 11)) {
            pax["mtime"] = std::to_string(e.mtime);
        }
        else {
            mtime = static_cast<std::uint64_t>(e.mtime);
        }
        std::uint64_t uid = e.uid;
        std::uint64_t gid = e.gid;
        if (not FitsOctal(uid, 7)) {
            pax["uid"] = std::to_string(uid);
            uid = 0;
        }
        if (not FitsOctal(gid, 7)) {
            pax["gid"] = std::to_string(gid);
            gid = 0;
        }
        std::string uname = e.owner_user;
        std::string gname = e.owner_group;
        if (uname.size() > 32) {
            pax["uname"] = uname;
            uname.clear();
        }
        if (gname.size() > 32) {
            pax["gname"] = gname;
            gname.clear();
        }
        std::uint64_t size = e.payload.size();
        if (not FitsOctal(size, 11)) {
            throw Error{ErrorCode::EntryTooLarge,
                        "tar entry larger than 8 GiB: " + e.path};
        }
        if (not pax.empty()) {
            std::string records;
            for (auto const& [k, v] : pax) {
                records += PaxRecord(k, v);
            }
            out += TarHeader("././@PaxHeader", "", 'x', 0644, 0, 0,
                             records.size(), 0, "", "", "");
            out += records;
            PadTo(&out, kTarBlock);
        }
        out += TarHeader(split->second, link, typeflag, e.unix_mode, uid, gid,
                         size, mtime, uname, gname, split->first);
        out += e.payload;
        PadTo(&out, kTarBlock);
    }
    out.append(2 * kTarBlock, '\0');
    PadTo(&out, kTarRecord);
    return out;
}

// ---------------------------------------------------------------------------
// gzip

auto ReadCString(ByteReader* r) -> std::string {
    std::string s;
    for (auto c = r->u8(); c != 0; c = r->u8()) {
        s.push_back(static_cast<char>(c));
    }
    return s;
}

auto ParseGzip(std::string_view bytes) -> Archive {
    Archive archive;
    archive.format = FormatKind::Gzip;
    ByteReader r{bytes, ErrorCode::MalformedArchive};
    std::string payload;
    bool first = true;
    while (true) {
        if (r.u8() != 0x1F or r.u8() != 0x8B) {
            Malformed("bad gzip magic");
        }
        if (r.u8() != 8) {
            Malformed("unsupported gzip compression method");
        }
        auto flg = r.u8();
        if ((flg & 0xE0) != 0) {
            Malformed("reserved gzip flag bits set");
        }
        GzipHeader h;
        h.mtime = r.u32le();
        h.xfl = r.u8();
        h.os = r.u8();
        if (flg & 0x04) {
            auto xlen = r.u16le();
            h.extra = std::string{r.bytes(xlen)};
        }
        if (flg & 0x08) {
            h.file_name = ReadCString(&r);
        }
        if (flg & 0x10) {
            h.comment = ReadCString(&r);
        }
        if (flg & 0x02) {
            r.skip(2);
        }
        std::size_t consumed = 0;
        auto rest = bytes.substr(r.pos());
        auto member = detail::InflateRawPrefix(rest, &consumed);
        r.skip(consumed);
        auto crc = r.u32le();
        auto isize = r.u32le();
        if (crc != detail::Crc32(member)) {
            Malformed("bad gzip CRC");
        }
        if (isize != static_cast<std::uint32_t>(member.size())) {
            Malformed("bad gzip ISIZE");
        }
        payload += member;
        if (first) {
            archive.trailer.gzip = std::move(h);
            first = false;
        }
        else {
            archive.notes.push_back("multi-member gzip stream joined");
        }
        if (r.remaining() < 2) {
            break;
        }
        auto next = bytes.substr(r.pos(), 2);
        if (next != "\x1F\x8B") {
            auto tail = bytes.substr(r.pos());
            if (std::any_of(tail.begin(), tail.end(),
                            [](char c) { return c != '\0'; })) {
                Malformed("trailing garbage after gzip stream");
            }
            break;
        }
    }
    Entry entry;
    entry.path = archive.trailer.gzip.file_name.empty()
                     ? std::string{kGzipDefaultMember}
                     : archive.trailer.gzip.file_name;
    entry.payload = std::move(payload);
    entry.compression = Compression::Deflate;
    archive.entries.push_back(std::move(entry));
    return archive;
}

auto WriteGzip(Archive const& archive) -> std::string {
    if (archive.entries.size() != 1) {
        throw Error{ErrorCode::InvalidEntry,
                    "gzip archive must hold exactly one member"};
    }
    auto const& h = archive.trailer.gzip;
    if (h.mtime < 0 or h.mtime > 0xFFFFFFFFLL) {
        throw Error{ErrorCode::InvalidEntry, "gzip MTIME out of range"};
    }
    if (h.extra.size() > 0xFFFF) {
        throw Error{ErrorCode::InvalidEntry, "gzip FEXTRA too large"};
    }
    if (h.file_name.find('\0') != std::string::npos or
        h.comment.find('\0') != std::string::npos) {
        throw Error{ErrorCode::InvalidEntry, "NUL inside gzip header string"};
    }
    auto const& payload = archive.entries.front().payload;
    std::string out;
    PutU8(&out, 0x1F);
    PutU8(&out, 0x8B);
    PutU8(&out, 8);
    std::uint8_t flg = 0;
    if (not h.extra.empty()) {
        flg |= 0x04;
    }
    if (not h.file_name.empty()) {
        flg |= 0x08;
    }
    if (not h.comment.empty()) {
        flg |= 0x10;
    }
    PutU8(&out, flg);
    PutU32le(&out, static_cast<std::uint32_t>(h.mtime));
    PutU8(&out, h.xfl);
    PutU8(&out, h.os);
    if (not h.extra.empty()) {
        PutU16le(&out, static_cast<std::uint16_t>(h.extra.size()));
        out += h.extra;
    }
    if (not h.file_name.empty()) {
        out += h.file_name;
        out.push_back('\0');
    }
    if (not h.comment.empty()) {
        out += h.comment;
        out.push_back('\0');
    }
    out += detail::DeflateRaw(payload);
    PutU32le(&out, detail::Crc32(payload));
    PutU32le(&out, static_cast<std::uint32_t>(payload.size()));
    return out;
}

}  // namespace

auto ToString(FormatKind kind) noexcept -> std::string_view {
    switch (kind) {
        case FormatKind::Zip:
            return "zip";
        case FormatKind::Tar:
            return "tar";
        case FormatKind::Gzip:
            return "gzip";
        case FormatKind::Opaque:
            return "opaque";
    }
    return "opaque";
}

auto DetectFormat(std::string_view bytes) noexcept -> FormatKind {
    if (bytes.size() >= 2 and bytes[0] == 'P' and bytes[1] == 'K') {
        return FormatKind::Zip;
    }
    if (bytes.size() >= 2 and static_cast<std::uint8_t>(bytes[0]) == 0x1F and
        static_cast<std::uint8_t>(bytes[1]) == 0x8B) {
        return FormatKind::Gzip;
    }
    if (bytes.size() >= 262 and bytes.substr(257, 5) == "ustar") {
        return FormatKind::Tar;
    }
    // An empty tar is nothing but end-of-archive blocks.
    if (bytes.size() >= 1024 and bytes.size() % 512 == 0 and
        bytes.find_first_not_of('\0') == std::string_view::npos) {
        return FormatKind::Tar;
    }
    return FormatKind::Opaque;
}

auto ParseArchive(std::string_view bytes) -> Archive {
    switch (DetectFormat(bytes)) {
        case FormatKind::Zip:
            return ParseZip(bytes);
        case FormatKind::Tar:
            return ParseTar(bytes);
        case FormatKind::Gzip:
            return ParseGzip(bytes);
        case FormatKind::Opaque:
            break;
    }
    Malformed("no container magic");
}

auto WriteArchive(Archive const& archive, WriteOptions const& options)
    -> std::string {
    switch (archive.format) {
        case FormatKind::Zip:
            return WriteZip(archive, options);
        case FormatKind::Tar:
            return WriteTar(archive);
        case FormatKind::Gzip:
            return WriteGzip(archive);
        case FormatKind::Opaque:
            break;
    }
    throw Error{ErrorCode::InvalidEntry, "cannot write an opaque archive"};
}

}  // namespace canon
