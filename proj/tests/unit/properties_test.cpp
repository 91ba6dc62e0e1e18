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

#include "canon/properties.hpp"
#include "gtest/gtest.h"
#include "support/generators.hpp"

namespace canon {
namespace {

TEST(Properties, TimestampCommentDropped) {
    auto const out = CanonicalizeProperties(
        "#Generated by Maven\n#Wed Apr 20 20:27:33 CEST 2022\nversion=1.2.3\n");
    EXPECT_EQ(out.find("CEST"), std::string::npos);
    EXPECT_EQ(out, "version=1.2.3\n");
}

TEST(Properties, KeysSorted) {
    EXPECT_EQ(CanonicalizeProperties(
                  "version=4.2.19\ngroupId=io.dropwizard.metrics\n"
                  "artifactId=metrics-annotation\n"),
              "artifactId=metrics-annotation\ngroupId=io.dropwizard.metrics\n"
              "version=4.2.19\n");
}

TEST(Properties, EmptyInput) {
    EXPECT_EQ(CanonicalizeProperties(""), "");
    EXPECT_TRUE(ParseProperties("").empty());
}

TEST(Properties, ParseLogicalLines) {
    auto const lines = ParseProperties(
        "! comment\n  key = a \\\n   b\nother:c\r\n\nlast value\n");
    ASSERT_EQ(lines.size(), 3U);
    EXPECT_EQ(lines[0].key, "key");
    EXPECT_EQ(lines[1].key, "other");
    EXPECT_EQ(lines[2].key, "last");
}

TEST(Properties, EclipseKeys) {
    std::string const text = "m2e.projectName=demo\nversion=1\n";
    EXPECT_EQ(CanonicalizeProperties(text), "version=1\n");
    EXPECT_EQ(CanonicalizeProperties(
                  text, {.canonical = true, .drop_eclipse_keys = false}),
              text);
    EXPECT_EQ(CanonicalizeProperties(
                  "#c\nm2e.x=1\nb=2\n", {.canonical = false, .drop_eclipse_keys = true}),
              "#c\nb=2\n");
}

TEST(Properties, Idempotent) {
    testing::Rng rng{9};
    for (int i = 0; i < 200; ++i) {
        auto const text = testing::RandomProperties(rng);
        auto const once = CanonicalizeProperties(text);
        EXPECT_EQ(CanonicalizeProperties(once), once);
    }
}

}  // namespace
}  // namespace canon
