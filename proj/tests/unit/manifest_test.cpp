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

#include <string>
#include <vector>

#include "canon/error.hpp"
#include "canon/manifest.hpp"
#include "canon/rules.hpp"
#include "canon/text.hpp"
#include "gtest/gtest.h"
#include "support/generators.hpp"

namespace canon {
namespace {

auto const kDefault = MakeProfile(ProfileName::Default);
auto const kAggressive = MakeProfile(ProfileName::Aggressive);

TEST(Manifest, ParseUnfoldsContinuations) {
    auto const sections = ParseManifest(
        "Manifest-Version: 1.0\r\nExport-Package: org.a,org\r\n .b\r\n\r\n"
        "Name: x/Y.class\r\nSHA-256-Digest: abc=\r\n\r\n");
    ASSERT_EQ(sections.size(), 2U);
    EXPECT_EQ(sections[0][1].key, "Export-Package");
    EXPECT_EQ(sections[0][1].value, "org.a,org.b");
    EXPECT_EQ(sections[1][0].value, "x/Y.class");
}

TEST(Manifest, ParseAcceptsAnyLineEnding) {
    auto const lf = ParseManifest("Manifest-Version: 1.0\nA: b\n");
    auto const cr = ParseManifest("Manifest-Version: 1.0\rA: b\r");
    EXPECT_EQ(lf, cr);
    EXPECT_EQ(lf[0].size(), 2U);
}

TEST(Manifest, ParseRejectsGarbage) {
    EXPECT_THROW((void)ParseManifest(""), Error);
    try {
        (void)ParseManifest("this is not a manifest\n");
        FAIL() << "expected NotAManifest";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAManifest);
    }
}

TEST(Manifest, WriterFoldsAtSeventyTwoBytes) {
    std::string value(200, 'x');
    auto const text = WriteManifest({{{"Manifest-Version", "1.0"},
                                      {"Long-Header", value}}});
    for (auto line : SplitLinesKeepEnds(text)) {
        ASSERT_TRUE(line.ends_with("\r\n"));
        EXPECT_LE(line.size() - 2, 72U);
    }
    EXPECT_EQ(ParseManifest(text)[0][1].value, value);
}

TEST(Manifest, WriteParseRoundTrip) {
    testing::Rng rng{77};
    for (int i = 0; i < 200; ++i) {
        std::vector<ManifestSection> sections(1 + testing::Below(rng, 3));
        for (std::size_t s = 0; s < sections.size(); ++s) {
            sections[s].push_back({s == 0 ? "Manifest-Version" : "Name",
                                   testing::RandomWord(rng)});
            auto const n = testing::Below(rng, 4);
            for (std::size_t k = 0; k < n; ++k) {
                std::string value;
                auto const words = testing::Below(rng, 30);
                for (std::size_t w = 0; w < words; ++w) {
                    value += testing::RandomWord(rng) + (w % 3 == 0 ? "," : " ");
                }
                sections[s].push_back({"X-" + testing::RandomWord(rng), value});
            }
        }
        auto const text = WriteManifest(sections);
        ASSERT_EQ(ParseManifest(text), sections) << text;
    }
}

TEST(Manifest, SplitOsgiList) {
    auto const parts = SplitOsgiList(
        "org.a;version=\"[1.0,2.0)\",org.b;uses:=\"x,y\"");
    ASSERT_TRUE(parts.has_value());
    ASSERT_EQ(parts->size(), 2U);
    EXPECT_EQ((*parts)[0], "org.a;version=\"[1.0,2.0)\"");
    EXPECT_EQ((*parts)[1], "org.b;uses:=\"x,y\"");
    EXPECT_EQ(SplitOsgiList("org.a;x=\"open"), std::nullopt);
    EXPECT_EQ(SplitOsgiList("org.a,,org.b"), std::nullopt);
}

TEST(Manifest, BuiltByRemoved) {
    auto const out = CanonicalizeManifest(
        "Manifest-Version: 1.0\r\nBuilt-By: root\r\n\r\n", kDefault);
    EXPECT_EQ(out.find("Built-By"), std::string::npos);
    EXPECT_EQ(out, "Manifest-Version: 1.0\r\n\r\n");
}

TEST(Manifest, ExportPackageValuesSorted) {
    auto const out = CanonicalizeManifest(
        "Manifest-Version: 1.0\r\nExport-Package: "
        "org.slf4j.ext;version=\"2.0.6\",org.slf4j.agent;version=\"2.0.6\"\r\n\r\n",
        kDefault);
    auto const value = ParseManifest(out)[0][1].value;
    EXPECT_EQ(value,
              "org.slf4j.agent;version=\"2.0.6\",org.slf4j.ext;version=\"2.0.6\"");
}

TEST(Manifest, TrivialManifestOnlyReframed) {
    EXPECT_EQ(CanonicalizeManifest("Manifest-Version: 1.0\n", kDefault),
              "Manifest-Version: 1.0\r\n\r\n");
    auto const r = CanonicalizeManifestDetailed("Manifest-Version: 1.0\r\n\r\n",
                                                kDefault);
    EXPECT_TRUE(r.applied_rule_ids.empty());
}

TEST(Manifest, MalformedOsgiHeaderFlaggedNotSorted) {
    auto const r = CanonicalizeManifestDetailed(
        "Manifest-Version: 1.0\r\nExport-Package: z,a;x=\"open\r\n\r\n", kDefault);
    EXPECT_EQ(ParseManifest(r.text)[0][1].value, "z,a;x=\"open");
    EXPECT_EQ(r.flags.size(), 1U);
}

TEST(Manifest, ProfileDecidesRebuildProcessAttributes) {
    std::string const text =
        "Manifest-Version: 1.0\r\nCreated-By: Maven 3.9\r\nBuild-Jdk: 17\r\n"
        "Bnd-LastModified: 1647431421514\r\nOs-Version: 5.15\r\n\r\n";
    auto const def = CanonicalizeManifest(text, kDefault);
    EXPECT_NE(def.find("Created-By"), std::string::npos);
    EXPECT_NE(def.find("Bnd-LastModified"), std::string::npos);
    EXPECT_EQ(def.find("Os-Version"), std::string::npos);
    auto const agg = CanonicalizeManifest(text, kAggressive);
    EXPECT_EQ(agg, "Manifest-Version: 1.0\r\n\r\n");
}

TEST(Manifest, SignedJarDigestsRemoved) {
    auto const r = CanonicalizeManifestDetailed(
        "Manifest-Version: 1.0\r\n\r\nName: a/B.class\r\n"
        "SHA-256-Digest: Zm9v\r\n\r\n",
        kDefault);
    EXPECT_EQ(r.text, "Manifest-Version: 1.0\r\n\r\n");
    EXPECT_EQ(r.applied_rule_ids, std::vector<std::string>{"manifest.entry-digests"});
}

TEST(Manifest, KeysSortedWithVersionFirst) {
    auto const out = CanonicalizeManifest(
        "Zeta: 1\r\nManifest-Version: 1.0\r\nAlpha: 2\r\n\r\n", kDefault);
    EXPECT_EQ(out, "Manifest-Version: 1.0\r\nAlpha: 2\r\nZeta: 1\r\n\r\n");
}

TEST(Manifest, CanonicalizationIsIdempotent) {
    testing::Rng rng{5};
    for (int i = 0; i < 200; ++i) {
        auto const text = testing::RandomManifest(rng);
        for (auto const* p : {&kDefault, &kAggressive}) {
            auto const once = CanonicalizeManifest(text, *p);
            EXPECT_EQ(CanonicalizeManifest(once, *p), once) << text;
        }
    }
}

}  // namespace
}  // namespace canon
