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

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "canon/archive.hpp"
#include "canon/digest.hpp"
#include "canon/error.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/generators.hpp"

namespace canon {
namespace {

using testing::ReadFixture;

auto Expected() -> nlohmann::json const& {
    static auto const doc = nlohmann::json::parse(ReadFixture("expected.json"));
    return doc;
}

auto FindEntry(Archive const& a, std::string_view path) -> Entry const* {
    for (auto const& e : a.entries) {
        if (e.path == path) {
            return &e;
        }
    }
    return nullptr;
}

auto PayloadMultiset(Archive const& a)
    -> std::vector<std::pair<std::string, std::string>> {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto const& e : a.entries) {
        out.emplace_back(e.path, e.payload);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TEST(DetectFormat, MagicBytes) {
    EXPECT_EQ(DetectFormat(std::string{"PK\x03\x04rest", 8}), FormatKind::Zip);
    EXPECT_EQ(DetectFormat("\x1F\x8B\x08"), FormatKind::Gzip);
    EXPECT_EQ(DetectFormat("hello"), FormatKind::Opaque);
    EXPECT_EQ(DetectFormat(""), FormatKind::Opaque);
    EXPECT_EQ(DetectFormat(ReadFixture("sample.tar")), FormatKind::Tar);
    EXPECT_EQ(DetectFormat(ReadFixture("empty.zip")), FormatKind::Zip);
}

TEST(ParseArchive, KeepsCentralDirectoryOrder) {
    auto const a = ParseArchive(ReadFixture("order.zip"));
    ASSERT_EQ(a.format, FormatKind::Zip);
    ASSERT_EQ(a.entries.size(), 2U);
    EXPECT_EQ(a.entries[0].path, "b.txt");
    EXPECT_EQ(a.entries[1].path, "a.txt");
    EXPECT_EQ(a.entries[0].payload, "b\n");
}

TEST(ParseArchive, EmptyZip) {
    auto const a = ParseArchive(ReadFixture("empty.zip"));
    EXPECT_EQ(a.format, FormatKind::Zip);
    EXPECT_TRUE(a.entries.empty());
}

TEST(WriteArchive, EmptyZipIsBareEndRecord) {
    Archive a;
    a.format = FormatKind::Zip;
    auto const bytes = WriteArchive(a);
    ASSERT_EQ(bytes.size(), 22U);
    EXPECT_EQ(bytes, ReadFixture("empty.zip"));
    EXPECT_EQ(bytes.substr(0, 4), "PK\x05\x06");
}

TEST(WriteArchive, EmptyTarRoundTrips) {
    Archive a;
    a.format = FormatKind::Tar;
    auto const bytes = WriteArchive(a);
    EXPECT_EQ(bytes, std::string(10240, '\0'));
    auto const back = ParseArchive(bytes);
    EXPECT_EQ(back.format, FormatKind::Tar);
    EXPECT_TRUE(back.entries.empty());
}

TEST(ParseArchive, ZipFixtureMatchesIndependentDescription) {
    auto const a = ParseArchive(ReadFixture("sample.zip"));
    auto const& want = Expected()["zip"];
    EXPECT_EQ(a.trailer.zip_comment, want["comment"].get<std::string>());
    ASSERT_EQ(a.entries.size(), want["entries"].size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        auto const& e = a.entries[i];
        auto const& w = want["entries"][i];
        SCOPED_TRACE(e.path);
        EXPECT_EQ(e.path, w["path"].get<std::string>());
        EXPECT_EQ(e.payload.size(), w["size"].get<std::size_t>());
        EXPECT_EQ(Sha256Hex(e.payload), w["sha256"].get<std::string>());
        EXPECT_EQ(e.mtime, w["mtime"].get<std::int64_t>());
        EXPECT_EQ(e.unix_mode & 07777, w["mode"].get<int>());
        EXPECT_EQ(e.is_directory, w["is_directory"].get<bool>());
        EXPECT_EQ(e.compression == Compression::Deflate, w["deflate"].get<bool>());
    }
}

TEST(ParseArchive, Zip64) {
    auto const plain = ParseArchive(ReadFixture("sample.zip"));
    auto const a = ParseArchive(ReadFixture("zip64.zip"));
    ASSERT_EQ(a.entries.size(), 2U);
    EXPECT_EQ(a.entries[0].payload, plain.entries[0].payload);
    EXPECT_EQ(a.entries[1].payload, plain.entries[1].payload);
}

TEST(ParseArchive, TarFixture) {
    auto const a = ParseArchive(ReadFixture("sample.tar"));
    auto const& want = Expected()["tar"];
    ASSERT_EQ(a.format, FormatKind::Tar);
    auto const* readme = FindEntry(a, "demo-1.0.0/README.txt");
    ASSERT_NE(readme, nullptr);
    EXPECT_EQ(Sha256Hex(readme->payload),
              want["sha256"]["demo-1.0.0/README.txt"].get<std::string>());
    EXPECT_EQ(readme->mtime, want["mtime"].get<std::int64_t>());
    auto const* link = FindEntry(a, want["symlink"]["path"].get<std::string>());
    ASSERT_NE(link, nullptr);
    EXPECT_EQ(link->link_target, want["symlink"]["target"].get<std::string>());
    EXPECT_NE(FindEntry(a, want["long_path"].get<std::string>()), nullptr);
    auto const* script = FindEntry(a, "demo-1.0.0/bin/demo.sh");
    ASSERT_NE(script, nullptr);
    EXPECT_EQ(script->unix_mode & 0777, 0755);
}

TEST(ParseArchive, TarOwnership) {
    auto const a = ParseArchive(ReadFixture("sample_owner.tar"));
    auto const* readme = FindEntry(a, "demo-1.0.0/README.txt");
    ASSERT_NE(readme, nullptr);
    EXPECT_EQ(readme->owner_user, "builder");
    EXPECT_EQ(readme->uid, 1000U);
}

TEST(ParseArchive, GzipWrappingTar) {
    auto const a = ParseArchive(ReadFixture("sample.tar.gz"));
    auto const& want = Expected()["gzip"];
    ASSERT_EQ(a.format, FormatKind::Gzip);
    ASSERT_EQ(a.entries.size(), 1U);
    EXPECT_EQ(a.trailer.gzip.mtime, want["mtime"].get<std::int64_t>());
    EXPECT_EQ(a.trailer.gzip.file_name, want["file_name"].get<std::string>());
    EXPECT_EQ(Sha256Hex(a.entries[0].payload),
              want["payload_sha256"].get<std::string>());
    EXPECT_EQ(ParseArchive(a.entries[0].payload).format, FormatKind::Tar);
}

TEST(ParseArchive, RejectsTruncatedZip) {
    auto bytes = ReadFixture("sample.zip");
    bytes.resize(bytes.size() / 2);
    try {
        (void)ParseArchive(bytes);
        FAIL() << "expected MalformedArchive";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedArchive);
    }
}

TEST(ParseArchive, RejectsCorruptedCrc) {
    auto bytes = ReadFixture("order.zip");
    // The first local entry stores "b\n" uncompressed right after its name.
    auto const at = bytes.find("b.txt") + 5;
    bytes[at] = 'c';
    EXPECT_THROW((void)ParseArchive(bytes), Error);
}

TEST(WriteArchive, RoundTripsFixtures) {
    for (auto const* name :
         {"sample.zip", "sample_mtime.zip", "built_by_root.jar", "zip64.zip",
          "order.zip", "empty.zip", "sample.tar", "sample_owner.tar",
          "sample.tar.gz", "sample_later.tar.gz"}) {
        SCOPED_TRACE(name);
        auto const first = ParseArchive(ReadFixture(name));
        auto const bytes = WriteArchive(first);
        auto const second = ParseArchive(bytes);
        EXPECT_EQ(first, second);
        EXPECT_EQ(PayloadMultiset(first), PayloadMultiset(second));
        EXPECT_EQ(WriteArchive(second), bytes);
    }
}

TEST(WriteArchive, MtimeIsObservable) {
    auto a = ParseArchive(ReadFixture("sample.zip"));
    auto const before = WriteArchive(a);
    a.entries[1].mtime += 1;
    EXPECT_NE(WriteArchive(a), before);
}

TEST(WriteArchive, RejectsIllFormedEntries) {
    Archive a;
    a.format = FormatKind::Zip;
    a.entries.push_back({.path = "dir\\file"});
    EXPECT_THROW((void)WriteArchive(a), Error);
    a.entries[0].path = "x";
    a.entries.push_back({.path = "x"});
    try {
        (void)WriteArchive(a);
        FAIL() << "expected InvalidEntry";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidEntry);
    }
}

TEST(WriteArchive, RandomArchivesRoundTrip) {
    testing::Rng rng{20260315};
    for (int i = 0; i < 300; ++i) {
        auto const a = testing::RandomArchive(rng);
        auto const bytes = WriteArchive(a);
        auto const back = ParseArchive(bytes);
        ASSERT_EQ(back, a) << "case " << i;
        ASSERT_EQ(WriteArchive(back), bytes) << "case " << i;
    }
}

}  // namespace
}  // namespace canon
