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
#include <set>
#include <string>

#include "canon/classfile.hpp"
#include "canon/corpus.hpp"
#include "canon/diff.hpp"
#include "canon/io.hpp"
#include "canon/rules.hpp"
#include "canon/verify.hpp"
#include "gtest/gtest.h"
#include "support/oracle.hpp"

namespace canon {
namespace {

TEST(Corpus, DeterministicPerSeed) {
    auto const a = BuildTaxonomyCorpus(42);
    auto const b = BuildTaxonomyCorpus(42);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        EXPECT_EQ(a[i].reference, b[i].reference) << a[i].id;
        EXPECT_EQ(a[i].rebuild, b[i].rebuild) << a[i].id;
    }
    auto const c = BuildTaxonomyCorpus(43);
    bool any_different = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        any_different = any_different or a[i].reference != c[i].reference;
    }
    EXPECT_TRUE(any_different);
}

TEST(Corpus, GeneratedFilesAreByteIdentical) {
    testing::TempDir one;
    testing::TempDir two;
    auto const pa = GenerateTaxonomyCorpus(5, one.path());
    auto const pb = GenerateTaxonomyCorpus(5, two.path());
    ASSERT_EQ(pa.size(), pb.size());
    EXPECT_EQ(ReadFileBytes(one.path() / "pairs.json"),
              ReadFileBytes(two.path() / "pairs.json"));
    for (std::size_t i = 0; i < pa.size(); ++i) {
        EXPECT_EQ(ReadFileBytes(pa[i].reference_path),
                  ReadFileBytes(pb[i].reference_path));
        EXPECT_EQ(ReadFileBytes(pa[i].rebuild_path), ReadFileBytes(pb[i].rebuild_path));
    }
    auto const reread = ReadPairsFile(one.path() / "pairs.json");
    EXPECT_EQ(reread, pa);
}

TEST(Corpus, Shape) {
    auto const corpus = BuildTaxonomyCorpus(1);
    EXPECT_GE(corpus.size(), 20U);
    std::set<std::string> ids;
    std::size_t negatives = 0;
    for (auto const& p : corpus) {
        EXPECT_TRUE(ids.insert(p.id).second) << p.id;
        EXPECT_NE(p.reference, p.rebuild) << p.id;
        EXPECT_EQ(p.negative_control, p.id.starts_with("negative-")) << p.id;
        negatives += p.negative_control ? 1 : 0;
        if (p.expected_cause.reason != Reason::Unknown) {
            EXPECT_NE(FindCatalogRow(p.expected_cause), nullptr) << p.id;
        }
    }
    EXPECT_EQ(negatives, 2U);
}

TEST(Corpus, ExpectedCauseIsClassified) {
    for (auto const& p : BuildTaxonomyCorpus(11)) {
        auto const leaves =
            LeafCauses(Classify(DiffArtifacts(p.reference, p.rebuild, kDefaultDiffDepth)));
        EXPECT_NE(std::find(leaves.begin(), leaves.end(), p.expected_cause),
                  leaves.end())
            << p.id << " expected " << ToString(p.expected_cause);
    }
}

TEST(Corpus, VerdictsFollowRuleCatalog) {
    for (auto const name :
         {ProfileName::ArchiveOnly, ProfileName::Default, ProfileName::Aggressive}) {
        auto const profile = MakeProfile(name);
        for (auto const& p : BuildTaxonomyCorpus(13)) {
            auto const expected = not p.negative_control and
                                          ProfileCovers(profile, p.expected_cause)
                                      ? VerdictStatus::ReproducibleAfterCanonicalization
                                      : VerdictStatus::Unreproducible;
            EXPECT_EQ(VerifyPair(p.reference, p.rebuild, profile).status, expected)
                << p.id << " under " << ToString(name);
        }
    }
}

TEST(Corpus, MitigationDecidesDefaultVerdict) {
    auto const profile = MakeProfile(ProfileName::Default);
    for (auto const& p : BuildTaxonomyCorpus(17)) {
        auto const* row = FindCatalogRow(p.expected_cause);
        bool const canonicalizable =
            row != nullptr and row->mitigation == Mitigation::CanonicalizeByRebuilder;
        auto const status = VerifyPair(p.reference, p.rebuild, profile).status;
        EXPECT_EQ(status == VerdictStatus::ReproducibleAfterCanonicalization,
                  canonicalizable and not p.negative_control)
            << p.id;
    }
}

TEST(Corpus, DemoClassParsesIndependently) {
    auto const bytes = WriteClassfile(DemoClass());
    auto const dump = testing::OracleDump(bytes, false, true);
    EXPECT_EQ(dump["this"], "class:com/example/Demo");
    EXPECT_EQ(dump["method_order"].size(), 4U);
    auto const reversed = WriteClassfile(DemoClass({.reverse_methods = true}));
    EXPECT_EQ(testing::OracleDump(reversed, false), testing::OracleDump(bytes, false));
}

}  // namespace
}  // namespace canon
