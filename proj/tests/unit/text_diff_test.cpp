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
#include <string>
#include <vector>

#include "canon/text.hpp"
#include "canon/text_diff.hpp"
#include "gtest/gtest.h"
#include "support/generators.hpp"

namespace canon {
namespace {

auto Lines(std::string_view text) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (auto l : SplitLinesKeepEnds(text)) {
        out.emplace_back(l);
    }
    return out;
}

// Textbook O(nm) longest common subsequence, independent of the Myers code.
auto LcsLength(std::vector<std::string> const& a,
               std::vector<std::string> const& b) -> std::size_t {
    std::vector<std::vector<std::size_t>> t(a.size() + 1,
                                            std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = a.size(); i-- > 0;) {
        for (std::size_t j = b.size(); j-- > 0;) {
            t[i][j] = a[i] == b[j] ? t[i + 1][j + 1] + 1
                                   : std::max(t[i + 1][j], t[i][j + 1]);
        }
    }
    return t[0][0];
}

struct Counts {
    std::size_t minus{0};
    std::size_t plus{0};
};

auto Count(std::vector<Hunk> const& hunks) -> Counts {
    Counts c;
    for (auto const& h : hunks) {
        for (auto const& l : h.lines) {
            c.minus += l[0] == '-' ? 1 : 0;
            c.plus += l[0] == '+' ? 1 : 0;
        }
    }
    return c;
}

// Rebuilds the new text from the old one and the hunks.
auto Apply(std::string_view old_text, std::vector<Hunk> const& hunks)
    -> std::string {
    auto const old_lines = Lines(old_text);
    std::string out;
    std::size_t next = 0;  // 0-based index of the next unconsumed old line
    for (auto const& h : hunks) {
        // Starts are 0-based in the model; Header() prints them 1-based.
        while (next < h.old_start) {
            out += old_lines[next++];
        }
        for (std::size_t k = 0; k < h.lines.size(); ++k) {
            auto const& l = h.lines[k];
            if (l[0] == '\\') {
                continue;
            }
            auto body = l.substr(1);
            if (k + 1 < h.lines.size() and h.lines[k + 1][0] == '\\') {
                body.pop_back();
            }
            if (l[0] == ' ' or l[0] == '-') {
                EXPECT_EQ(old_lines.at(next), body);
                ++next;
            }
            if (l[0] == ' ' or l[0] == '+') {
                out += body;
            }
        }
    }
    while (next < old_lines.size()) {
        out += old_lines[next++];
    }
    return out;
}

auto RandomLines(testing::Rng& rng) -> std::string {
    static constexpr char const* kPool[] = {"a\n", "b\n", "c\n", "d\n", "e\n", "f"};
    std::string s;
    auto const n = testing::Below(rng, 25);
    for (std::size_t i = 0; i < n; ++i) {
        s += kPool[testing::Below(rng, 5)];
    }
    if (testing::Chance(rng, 20)) {
        s += kPool[5];
    }
    return s;
}

TEST(TextDiff, EqualInputsGiveNoHunks) {
    EXPECT_TRUE(UnifiedTextDiff("", "").empty());
    EXPECT_TRUE(UnifiedTextDiff("x\ny\n", "x\ny\n").empty());
}

TEST(TextDiff, SingleChangedLine) {
    auto const hunks = UnifiedTextDiff("a\nBuilt-By: root\nc\n", "a\nBuilt-By: aman\nc\n");
    ASSERT_EQ(hunks.size(), 1U);
    EXPECT_EQ(hunks[0].lines,
              (std::vector<std::string>{" a\n", "-Built-By: root\n",
                                        "+Built-By: aman\n", " c\n"}));
    EXPECT_EQ(hunks[0].Header(), "@@ -1,3 +1,3 @@\n");
}

TEST(TextDiff, MissingFinalNewlineIsMarked) {
    auto const hunks = UnifiedTextDiff("a\n", "a");
    ASSERT_EQ(hunks.size(), 1U);
    EXPECT_EQ(hunks[0].lines, (std::vector<std::string>{
                                  "-a\n", "+a\n", "\\ No newline at end of file\n"}));
}

TEST(TextDiff, ContextSeparatesHunks) {
    std::string a;
    std::string b;
    for (int i = 0; i < 30; ++i) {
        a += std::to_string(i) + "\n";
        b += (i == 2 or i == 25 ? "x" : std::to_string(i)) + "\n";
    }
    EXPECT_EQ(UnifiedTextDiff(a, b, 3).size(), 2U);
    EXPECT_EQ(UnifiedTextDiff(a, b, 20).size(), 1U);
}

TEST(TextDiff, FileHeaders) {
    auto const text = FormatUnifiedDiff(UnifiedTextDiff("a\n", "b\n"), "ref", "reb");
    EXPECT_EQ(text, "--- ref\n+++ reb\n@@ -1 +1 @@\n-a\n+b\n");
    EXPECT_EQ(FormatHunks(UnifiedTextDiff("a\n", "b\n")), "@@ -1 +1 @@\n-a\n+b\n");
}

TEST(TextDiff, MinimalAgainstLcsOracle) {
    testing::Rng rng{11};
    for (int i = 0; i < 500; ++i) {
        auto const a = RandomLines(rng);
        auto const b = RandomLines(rng);
        auto const la = Lines(a);
        auto const lb = Lines(b);
        auto const lcs = LcsLength(la, lb);
        auto const c = Count(UnifiedTextDiff(a, b));
        ASSERT_EQ(c.minus, la.size() - lcs) << a << "|" << b;
        ASSERT_EQ(c.plus, lb.size() - lcs) << a << "|" << b;
    }
}

TEST(TextDiff, HunksReconstructTarget) {
    testing::Rng rng{12};
    for (int i = 0; i < 500; ++i) {
        auto const a = RandomLines(rng);
        auto const b = RandomLines(rng);
        auto const context = testing::Below(rng, 4);
        ASSERT_EQ(Apply(a, UnifiedTextDiff(a, b, context)), b) << a << "|" << b;
    }
}

TEST(TextDiff, Symmetry) {
    testing::Rng rng{13};
    for (int i = 0; i < 500; ++i) {
        auto const a = RandomLines(rng);
        auto const b = RandomLines(rng);
        auto const ab = UnifiedTextDiff(a, b);
        auto const ba = UnifiedTextDiff(b, a);
        ASSERT_EQ(ab.size(), ba.size());
        auto const cab = Count(ab);
        auto const cba = Count(ba);
        EXPECT_EQ(cab.minus, cba.plus);
        EXPECT_EQ(cab.plus, cba.minus);
    }
}

}  // namespace
}  // namespace canon
