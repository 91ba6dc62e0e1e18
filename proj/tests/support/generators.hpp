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

#ifndef INCLUDED_CANON_TESTS_SUPPORT_HPP
#define INCLUDED_CANON_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "canon/archive.hpp"
#include "canon/classfile.hpp"
#include "canon/corpus.hpp"
#include "canon/io.hpp"
#include "canon/rules.hpp"

namespace canon::testing {

using Rng = std::mt19937_64;

[[nodiscard]] inline auto FixturePath(std::string_view name)
    -> std::filesystem::path {
    return std::filesystem::path{CANON_FIXTURE_DIR} / name;
}

[[nodiscard]] inline auto ReadFixture(std::string_view name) -> std::string {
    return ReadFileBytes(FixturePath(name));
}

[[nodiscard]] inline auto Below(Rng& rng, std::uint64_t n) -> std::uint64_t {
    return rng() % n;
}

[[nodiscard]] inline auto Chance(Rng& rng, unsigned percent) -> bool {
    return Below(rng, 100) < percent;
}

[[nodiscard]] inline auto RandomBytes(Rng& rng, std::size_t n) -> std::string {
    std::string s(n, '\0');
    for (auto& c : s) {
        c = static_cast<char>(rng() & 0xFF);
    }
    return s;
}

[[nodiscard]] inline auto RandomWord(Rng& rng) -> std::string {
    static constexpr char kLetters[] = "abcdefghijklmnopqrstuvwxyz";
    std::string s;
    auto const n = 1 + Below(rng, 8);
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(kLetters[Below(rng, 26)]);
    }
    return s;
}

[[nodiscard]] inline auto RandomText(Rng& rng) -> std::string {
    std::string s;
    auto const lines = Below(rng, 12);
    bool const crlf = Chance(rng, 30);
    for (std::size_t i = 0; i < lines; ++i) {
        auto const words = Below(rng, 6);
        for (std::size_t w = 0; w < words; ++w) {
            if (w != 0) {
                s.push_back(' ');
            }
            s += RandomWord(rng);
        }
        s += crlf ? "\r\n" : "\n";
    }
    if (Chance(rng, 20)) {
        s += RandomWord(rng);
    }
    return s;
}

[[nodiscard]] inline auto RandomManifest(Rng& rng) -> std::string {
    std::string s = "Manifest-Version: 1.0\r\n";
    if (Chance(rng, 60)) {
        s += "Built-By: " + RandomWord(rng) + "\r\n";
    }
    if (Chance(rng, 50)) {
        s += "Created-By: Apache Maven 3." + std::to_string(Below(rng, 10)) +
             "\r\n";
    }
    if (Chance(rng, 40)) {
        s += "Bnd-LastModified: " + std::to_string(1600000000000 + Below(rng, 1000000000)) +
             "\r\n";
    }
    if (Chance(rng, 50)) {
        s += "Export-Package: ";
        auto const n = 1 + Below(rng, 4);
        for (std::size_t i = 0; i < n; ++i) {
            s += (i == 0 ? "" : ",") + std::string{"org."} + RandomWord(rng) +
                 ";version=\"1." + std::to_string(i) + "\"";
        }
        s += "\r\n";
    }
    if (Chance(rng, 30)) {
        s += "\r\nName: org/" + RandomWord(rng) + ".class\r\nSHA-256-Digest: " +
             RandomWord(rng) + "=\r\n";
    }
    return s + "\r\n";
}

[[nodiscard]] inline auto RandomProperties(Rng& rng) -> std::string {
    std::string s = "#Generated by Maven\n#Wed Apr 20 20:27:33 CEST 2022\n";
    std::vector<std::string> keys{"groupId", "artifactId", "version",
                                  "m2e.projectName"};
    std::shuffle(keys.begin(), keys.end(), rng);
    for (auto const& k : keys) {
        if (Chance(rng, 80)) {
            s += k + "=" + RandomWord(rng) + "\n";
        }
    }
    return s;
}

[[nodiscard]] inline auto RandomSbom(Rng& rng) -> std::string {
    return "{\"bomFormat\":\"CycloneDX\",\"specVersion\":\"1.4\","
           "\"serialNumber\":\"urn:uuid:" +
           RandomWord(rng) +
           "\",\"metadata\":{\"timestamp\":\"2023-01-0" +
           std::to_string(1 + Below(rng, 9)) +
           "T00:00:00Z\"},\"components\":[{\"name\":\"" + RandomWord(rng) +
           "\",\"purl\":\"pkg:maven/org/" + RandomWord(rng) + "@1.0\"}]}\n";
}

struct ArchiveShape {
    int nesting{1};  // nested archive levels still allowed
};

[[nodiscard]] auto RandomArchive(Rng& rng, ArchiveShape shape = {}) -> Archive;

[[nodiscard]] inline auto RandomEntryPayload(Rng& rng, std::string* path,
                                             ArchiveShape shape)
    -> std::string {
    switch (Below(rng, shape.nesting > 0 ? 9 : 8)) {
        case 0:
            return RandomBytes(rng, Below(rng, 400));
        case 1:
        case 2:
            *path += ".txt";
            return RandomText(rng);
        case 3:
            *path = "META-INF/MANIFEST.MF";
            return RandomManifest(rng);
        case 4:
            *path = "META-INF/maven/org.example/" + RandomWord(rng) +
                    "/pom.properties";
            return RandomProperties(rng);
        case 5:
            *path += ".class";
            return WriteClassfile(DemoClass(
                {.reverse_methods = Chance(rng, 50),
                 .first_line = static_cast<int>(1 + Below(rng, 50))}));
        case 6:
            *path = "META-INF/sbom/" + RandomWord(rng) + ".cdx.json";
            return RandomSbom(rng);
        case 7:
            *path += Chance(rng, 50) ? ".sh" : ".properties";
            return RandomText(rng);
        default:
            *path += ".jar";
            return WriteArchive(
                RandomArchive(rng, {.nesting = shape.nesting - 1}));
    }
}

inline auto RandomArchive(Rng& rng, ArchiveShape shape) -> Archive {
    Archive a;
    auto const pick = Below(rng, 20);
    a.format = pick < 12 ? FormatKind::Zip
                         : (pick < 17 ? FormatKind::Tar : FormatKind::Gzip);
    if (a.format == FormatKind::Gzip) {
        Archive inner;
        inner.format = FormatKind::Tar;
        std::set<std::string> seen;
        auto const n = Below(rng, 5);
        for (std::size_t i = 0; i < n; ++i) {
            Entry e;
            e.path = "pkg/" + RandomWord(rng);
            e.payload = RandomEntryPayload(rng, &e.path, {.nesting = 0});
            if (not seen.insert(e.path).second) {
                continue;
            }
            e.mtime = 315532800 + static_cast<std::int64_t>(Below(rng, 1800000000));
            e.unix_mode = Chance(rng, 50) ? 0644 : 0755;
            e.owner_user = RandomWord(rng);
            e.uid = static_cast<std::uint32_t>(Below(rng, 5000));
            inner.entries.push_back(std::move(e));
        }
        Entry member;
        bool const named = Chance(rng, 70);
        member.path = named ? RandomWord(rng) + ".tar"
                            : std::string{kGzipDefaultMember};
        member.payload = WriteArchive(inner);
        member.compression = Compression::Deflate;
        a.trailer.gzip.file_name = named ? member.path : "";
        a.trailer.gzip.mtime = static_cast<std::int64_t>(Below(rng, 2000000000));
        a.trailer.gzip.os = Chance(rng, 50) ? 3 : 255;
        a.entries.push_back(std::move(member));
        return a;
    }

    std::set<std::string> seen;
    auto const n = Below(rng, 9);
    for (std::size_t i = 0; i < n; ++i) {
        Entry e;
        bool const dir = Chance(rng, 15);
        auto const top = Below(rng, 4);
        e.path = top == 0 ? "" : (top == 1 ? "lib/" : (top == 2 ? "a/b/" : "META-INF/"));
        e.path += RandomWord(rng);
        if (dir) {
            e.path += "/";
            e.is_directory = true;
        }
        else {
            e.payload = RandomEntryPayload(rng, &e.path, shape);
            if (Chance(rng, 5)) {
                e.path = "META-INF/" + RandomWord(rng) +
                         (Chance(rng, 50) ? ".SF" : ".RSA");
            }
        }
        if (not seen.insert(e.path).second) {
            continue;
        }
        e.mtime = 315532800 + static_cast<std::int64_t>(Below(rng, 1800000000));
        static constexpr std::uint16_t kModes[] = {0644, 0755, 0600, 0700, 0444};
        e.unix_mode = kModes[Below(rng, 5)];
        if (a.format == FormatKind::Zip) {
            e.compression = (Chance(rng, 60) and not dir) ? Compression::Deflate
                                                          : Compression::Store;
            if (Chance(rng, 10)) {
                e.extra_fields.push_back({0xCAFE, ""});
            }
            if (Chance(rng, 10)) {
                e.comment = RandomWord(rng);
            }
        }
        else {
            e.owner_user = Chance(rng, 50) ? "root" : RandomWord(rng);
            e.owner_group = Chance(rng, 50) ? "wheel" : RandomWord(rng);
            e.uid = static_cast<std::uint32_t>(Below(rng, 70000));
            e.gid = static_cast<std::uint32_t>(Below(rng, 70000));
            if (not dir and Chance(rng, 8)) {
                e.link_target = RandomWord(rng);
                e.payload.clear();
                e.unix_mode = 0777;
            }
        }
        a.entries.push_back(std::move(e));
    }
    if (a.format == FormatKind::Zip and Chance(rng, 20)) {
        a.trailer.zip_comment = RandomWord(rng);
    }
    return a;
}

/// Entries outside the scope of every metadata rule: no content or removal
/// rule applies except line-ending normalization, and the payload is not
/// itself a container.
[[nodiscard]] inline auto IsNonMetadataEntry(Entry const& e) -> bool {
    if (e.is_directory or not e.link_target.empty() or e.payload.empty() or
        DetectFormat(e.payload) != FormatKind::Opaque) {
        return false;
    }
    for (auto const& rule : ListRules()) {
        bool const rewrites = rule.kind == RuleKind::EntryContent or
                              rule.kind == RuleKind::EntryRemoval;
        if (rewrites and rule.id != "filesystem.line-endings" and
            rule.applies_to and rule.applies_to(e.path, e.payload)) {
            return false;
        }
    }
    return true;
}

}  // namespace canon::testing

#endif  // INCLUDED_CANON_TESTS_SUPPORT_HPP
